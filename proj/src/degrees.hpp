#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactnum.hpp"

namespace charres {

struct PrimePower {
    long p = 0;
    long n = 0;
    long q = 0;
};

bool is_prime(long v);
/// decomposes q = p^n; throws DomainError otherwise
PrimePower prime_power(long q);

/// Cross characteristic, classified the way the degree formulas branch.
struct EllClass {
    enum class Kind { Zero, Two, Three, Large };
    Kind kind = Kind::Zero;
    long ell = 0;

    /// validates ell: 0, or a prime not dividing q
    static EllClass make(long ell, const PrimePower& q);
    std::string str() const;
};

struct DegreeValue {
    bool exact = true;
    Integer value;

    std::string str() const;
    bool operator==(const DegreeValue&) const = default;
};

/// Every complex character degree of G2(q) applicable at q, in table order.
std::vector<std::pair<std::string, Integer>> complex_degrees(long q);

/// Smallest degree > 1 of an irreducible l-modular representation.
Integer d1(long q, const EllClass& ell);

/// Second smallest; a lower bound on one branch.
DegreeValue d2(long q, const EllClass& ell);

/// The parameterized 2- or 3-modular degree tables: exact where the entry is
/// parameter free, footnote lower bounds where it is not.
std::vector<std::pair<std::string, DegreeValue>> brauer_degree_bounds(long q, long ell);

struct GapCharacter {
    std::string base;          // complex character it reduces from
    bool reduced = false;      // restriction to l-regular elements
    bool minus_trivial = false;
    Integer degree;

    std::string str() const;
};

/// The unique irreducible of degree strictly between 1 and d2.
GapCharacter unique_gap_character(long q, const EllClass& ell);

enum class Family { G2, Sz, Ree };

std::optional<Family> family_from_string(const std::string& s);
std::string family_str(Family f);

/// q admissibility for a family (G2: q >= 5; Sz: 2^odd >= 8; Ree: 3^odd >= 27)
PrimePower check_admissible(Family fam, long q);

struct SubgroupCandidate {
    std::string name;  // instantiated, e.g. "G2(5)"
    Integer order;
    Integer center_order = 1;
    std::string conditions;  // rendering of the require clause, may be empty
};

/// Candidate maximal subgroups with evaluated integer orders, loaded from the
/// family's data file.
std::vector<SubgroupCandidate> maximal_subgroup_orders(Family fam, long q,
                                                       const std::string& data_dir);

struct ScreenEntry {
    SubgroupCandidate candidate;
    bool kept = false;
};

struct ScreenResult {
    std::string bound_desc;
    Integer bound;  // compared against |M| (G2: d1^2) or 2|M| (Sz)
    std::vector<ScreenEntry> entries;
    std::vector<SubgroupCandidate> survivors;
    std::string data_file;
};

/// Order screen: G2 keeps |M| >= d1(q,l)^2, Sz keeps |M| >= q(q-1)^2/2,
/// Ree keeps |M| >= q^2(q-1)^2.
ScreenResult screen(Family fam, long q, const EllClass& ell, const std::string& data_dir);

/// data file used for (family, q)
std::string candidate_file(Family fam, long q);

}  // namespace charres

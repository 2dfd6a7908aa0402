#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exactnum.hpp"

namespace charres {

// Verdict statuses.  `separated` is the positive outcome of the
// central-character block test: the two characters lie in different
// l-blocks.  A related inference pattern that is only cited in report text
// (never computed here, since block membership is input data): when every
// complex character in a block has the same degree, the block contains a
// single Brauer character and each reduction equals it.
enum class Status { Irreducible, Reducible, Inconclusive, Separated };

std::string status_str(Status s);

struct Verdict {
    Status status = Status::Inconclusive;
    std::string rule;
    std::vector<std::pair<std::string, std::string>> evidence;
};

/// m_C(M) <= sqrt(|M|/|Z(M)|): a degree too large for that bound cannot
/// restrict irreducibly.
Verdict sqrt_bound_filter(const Integer& char_degree, const Integer& subgroup_order,
                          const Integer& subgroup_center_order);

/// A complex irreducible degree divides the group order.
Verdict degree_divides(const Integer& char_degree, const Integer& subgroup_order);

/// Frobenius criterion on an exact restriction norm.
Verdict frobenius_irreducible(const Rational& norm);

struct CliffordSolution {
    Integer e;
    Integer t;
    Integer theta_degree;
};

/// All (e, t, theta) with e^2 t = m and e t theta = char_degree, theta
/// restricted to `allowed` when given; sorted by e then t.
std::vector<CliffordSolution> clifford_solutions(const Integer& m, const Integer& char_degree,
                                                 const std::optional<std::set<Integer>>& allowed =
                                                     std::nullopt);
bool all_multiplicity_one(const std::vector<CliffordSolution>& sols);

/// Restriction to a normal subgroup of prime index p is irreducible or a sum
/// of p distinct irreducibles of equal degree; any other observed
/// decomposition forces reducibility of the index-p restriction.
/// `constituents` are (degree, multiplicity) pairs of the H-restriction.
Verdict index_p_split(const Integer& char_degree, long p,
                      const std::vector<std::pair<Integer, long>>& constituents);

/// Faithful modules restrict reducibly to subgroups with O_l(H) != 1.
Verdict oell_rule(const Integer& o_ell_order);

/// Central character test: d = class_length (val_rho/deg_rho - val_alpha/deg_alpha).
/// A rational integer d with l not dividing d witnesses different l-blocks;
/// everything else (including irrational or fractional d) is inconclusive.
Verdict block_separation_witness(const Integer& deg_rho, const Cyclotomic& val_rho,
                                 const Integer& deg_alpha, const Cyclotomic& val_alpha,
                                 const Integer& class_length, long ell);

}  // namespace charres

#include "criteria.hpp"

#include <algorithm>
#include <sstream>

namespace charres {

namespace {

std::string istr(const Integer& v) { return v.str(); }

}  // namespace

std::string status_str(Status s) {
    switch (s) {
        case Status::Irreducible: return "irreducible";
        case Status::Reducible: return "reducible";
        case Status::Inconclusive: return "inconclusive";
        case Status::Separated: return "separated";
    }
    return "?";
}

Verdict sqrt_bound_filter(const Integer& char_degree, const Integer& subgroup_order,
                          const Integer& subgroup_center_order) {
    if (char_degree < 1 || subgroup_order < 1 || subgroup_center_order < 1)
        throw DomainError("sqrt_bound_filter arguments must be positive");
    Verdict v;
    v.rule = "sqrt_bound";
    v.evidence.emplace_back("degree^2", istr(char_degree * char_degree));
    v.evidence.emplace_back("|M|/|Z|", istr(subgroup_order / subgroup_center_order));
    // degree^2 > |M|/|Z|  <=>  degree^2 * |Z| > |M|, compared exactly
    if (char_degree * char_degree * subgroup_center_order > subgroup_order) {
        v.status = Status::Reducible;
        v.evidence.emplace_back("note", "degree exceeds sqrt(|M/Z|); restriction cannot be irreducible");
    } else {
        v.status = Status::Inconclusive;
    }
    return v;
}

Verdict degree_divides(const Integer& char_degree, const Integer& subgroup_order) {
    if (char_degree < 1 || subgroup_order < 1)
        throw DomainError("degree_divides arguments must be positive");
    Verdict v;
    v.rule = "degree_divides";
    v.evidence.emplace_back("degree", istr(char_degree));
    v.evidence.emplace_back("|M|", istr(subgroup_order));
    if (subgroup_order % char_degree != 0) {
        v.status = Status::Reducible;
        v.evidence.emplace_back("note", "a complex irreducible degree divides the group order");
    } else {
        v.status = Status::Inconclusive;
    }
    return v;
}

Verdict frobenius_irreducible(const Rational& norm) {
    if (!rational_is_integer(norm) || norm < 1)
        throw DataError("invalid restriction norm " + norm.str() +
                        ": a genuine norm is a positive integer");
    Verdict v;
    v.rule = "frobenius_norm";
    v.evidence.emplace_back("norm", norm.str());
    v.status = (norm == 1) ? Status::Irreducible : Status::Reducible;
    return v;
}

std::vector<CliffordSolution> clifford_solutions(const Integer& m, const Integer& char_degree,
                                                 const std::optional<std::set<Integer>>& allowed) {
    if (m < 1 || char_degree < 1) throw DomainError("clifford arguments must be positive");
    std::vector<CliffordSolution> out;
    for (Integer e = 1; e * e <= m; ++e) {
        if (m % (e * e) != 0) continue;
        Integer t = m / (e * e);
        if (char_degree % (e * t) != 0) continue;
        Integer theta = char_degree / (e * t);
        if (allowed && allowed->count(theta) == 0) continue;
        out.push_back({e, t, theta});
    }
    std::sort(out.begin(), out.end(), [](const CliffordSolution& a, const CliffordSolution& b) {
        if (a.e != b.e) return a.e < b.e;
        return a.t < b.t;
    });
    return out;
}

bool all_multiplicity_one(const std::vector<CliffordSolution>& sols) {
    if (sols.empty()) return false;
    for (const auto& s : sols)
        if (s.e != 1) return false;
    return true;
}

Verdict index_p_split(const Integer& char_degree, long p,
                      const std::vector<std::pair<Integer, long>>& constituents) {
    if (char_degree < 1 || p < 2) throw DomainError("index_p_split arguments out of range");
    Verdict v;
    v.rule = "index_p_split";
    std::ostringstream os;
    Integer total = 0;
    long pieces = 0;
    bool multiplicity_free = true;
    bool equal_degrees = true;
    Integer first_degree = -1;
    for (const auto& [deg, mult] : constituents) {
        if (deg < 1 || mult < 1) throw DomainError("constituents must have positive degree and multiplicity");
        total += deg * mult;
        pieces += mult;
        if (mult != 1) multiplicity_free = false;
        if (first_degree < 0)
            first_degree = deg;
        else if (deg != first_degree)
            equal_degrees = false;
        os << mult << "x" << deg << " ";
    }
    v.evidence.emplace_back("restriction", os.str());
    if (total != char_degree)
        throw DomainError("constituent degrees sum to " + total.str() + ", not " +
                          char_degree.str());
    bool single_irreducible = (pieces == 1);
    bool p_distinct_split = (pieces == p) && multiplicity_free && equal_degrees;
    if (single_irreducible || p_distinct_split) {
        v.status = Status::Inconclusive;
        v.evidence.emplace_back("note", "decomposition shape is allowed for an irreducible restriction");
    } else {
        v.status = Status::Reducible;
        v.evidence.emplace_back(
            "note", "restriction to a normal subgroup of prime index is irreducible or a sum of p "
                    "distinct irreducibles of equal degree; observed shape is neither");
    }
    return v;
}

Verdict oell_rule(const Integer& o_ell_order) {
    if (o_ell_order < 1) throw DomainError("|O_l(H)| must be a positive power of l");
    Verdict v;
    v.rule = "o_ell";
    v.evidence.emplace_back("|O_l(H)|", istr(o_ell_order));
    if (o_ell_order > 1) {
        v.status = Status::Reducible;
        v.evidence.emplace_back("note", "faithful modules restrict reducibly when O_l(H) != 1");
    } else {
        v.status = Status::Inconclusive;
    }
    return v;
}

Verdict block_separation_witness(const Integer& deg_rho, const Cyclotomic& val_rho,
                                 const Integer& deg_alpha, const Cyclotomic& val_alpha,
                                 const Integer& class_length, long ell) {
    if (deg_rho < 1 || deg_alpha < 1 || class_length < 1 || ell < 2)
        throw DomainError("block_separation_witness arguments out of range");
    Verdict v;
    v.rule = "central_character";
    Cyclotomic diff = val_rho * Cyclotomic(Rational(class_length, deg_rho)) -
                      val_alpha * Cyclotomic(Rational(class_length, deg_alpha));
    v.evidence.emplace_back("difference", diff.str());
    if (!diff.is_rational()) {
        v.status = Status::Inconclusive;
        v.evidence.emplace_back("note", "difference is irrational; membership in a maximal ideal "
                                        "over l is undecided at this level");
        return v;
    }
    Rational d = diff.to_rational();
    if (!rational_is_integer(d)) {
        v.status = Status::Inconclusive;
        v.evidence.emplace_back("note", "difference is not a rational integer; undecided");
        return v;
    }
    Integer n = numerator(d);
    if (n % ell != 0) {
        v.status = Status::Separated;
        v.evidence.emplace_back("note", "omega_rho(K) - omega_alpha(K) is an integer not divisible by " +
                                            std::to_string(ell) +
                                            ", so the characters lie in different " +
                                            std::to_string(ell) + "-blocks");
    } else {
        v.status = Status::Inconclusive;
        v.evidence.emplace_back("note", "difference divisible by " + std::to_string(ell) +
                                            "; no separation witness");
    }
    return v;
}

}  // namespace charres

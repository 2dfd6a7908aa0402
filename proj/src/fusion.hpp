#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chartab.hpp"
#include "exactnum.hpp"

namespace charres {

/**
 * One subgroup class fused into the parent group.  Three flavors:
 *  - plain: one target, one value per character;
 *  - ambiguous: several targets; when values differ per target the row is
 *    "active" and a BranchAssignment picks the alternative (rows sharing a
 *    link id choose together); when every character carries a single value
 *    the ambiguity is "passive" and never branched;
 *  - aggregate: a residual block of classes the source table leaves
 *    unlisted (no targets; the length is the residual total; subset
 *    computations may take any portion of it when its value is zero).
 */
struct FusionRow {
    std::string name;
    Integer length;
    std::vector<long> orders;  // possible element orders (usually one)
    std::vector<std::string> targets;
    std::string link;
    bool aggregate = false;

    long max_order() const;
    long min_order() const;
};

/**
 * Fusion of subgroup classes into parent classes plus character value rows.
 * For cover > 1 the values are taken at one chosen pre-image per base class
 * and norms divide by the base subgroup order; that device is only valid for
 * characters flagged faithful, and the norm operations refuse others.
 *
 * File format (line oriented, '#' comments):
 *   fusion <subname> order <H> into <parent> cover <m>
 *   row <name> length <L> order <k>[|<k>...] -> <t1>[|<t2>...] [link <id>]
 *   agg <name> length <L> orders <k1>[,<k2>...]
 *   values <char> [faithful] <v1> ... <vr>   (entry "a|b" pairs with targets)
 */
struct FusionDataset {
    std::string subgroup_name;
    Integer subgroup_order;
    std::string parent_name;
    long cover = 1;
    std::vector<FusionRow> rows;
    std::map<std::string, std::vector<std::vector<Cyclotomic>>> char_values;
    std::set<std::string> faithful_chars;

    static FusionDataset parse(std::istream& in, const std::string& source);
    static FusionDataset load(const std::string& path);

    size_t row_index(const std::string& name) const;  // throws DataError
    size_t identity_row() const;
    bool row_is_active(size_t idx) const;
    std::vector<std::string> character_names() const;

private:
    std::map<std::string, size_t> index_;
    std::set<std::string> active_;
    void finish();
    friend ValidationReport validate_fusion(const FusionDataset&, const CharacterTable*);
};

/// link id (or row name for unlinked active rows) -> chosen target index
using BranchAssignment = std::map<std::string, size_t>;

std::vector<BranchAssignment> enumerate_branches(const FusionDataset& f);
/// chosen target index of a row under an assignment (0 for plain/passive rows)
size_t chosen_index(const FusionDataset& f, size_t row, const BranchAssignment& b);
/// value of a character at a row under an assignment
const Cyclotomic& value_at(const FusionDataset& f, const std::string& chi, size_t row,
                           const BranchAssignment& b);
/// "D1=4A D2=12A" style rendering of the active choices
std::string branch_label(const FusionDataset& f, const BranchAssignment& b);

struct NormResult {
    Rational sum;   // sum over classes of length * |value|^2
    Rational norm;  // sum / dividing order
};

/// [chi|_H, chi|_H] computed from the fused value row.
NormResult restriction_norm(const FusionDataset& f, const std::string& chi,
                            const BranchAssignment& b);

/// Norm of the restriction to a normal part of order n_order given as a set
/// of row names (must contain the identity row, lengths summing to n_order;
/// zero-value aggregate rows may fill any deficit).
NormResult normal_part_norm(const FusionDataset& f, const std::string& chi,
                            const std::set<std::string>& subset, const Integer& n_order,
                            const BranchAssignment& b);

struct NormalSubset {
    std::vector<std::string> members;                       // non-aggregate rows, sorted
    std::vector<std::pair<std::string, Integer>> agg_used;  // aggregate row -> portion
    Rational sum;
    Rational norm;
    bool integral = false;
};

/// Every candidate class subset containing the identity with element orders
/// <= max_order and lengths summing to n_order, with its norm.
std::vector<NormalSubset> enumerate_normal_subsets(const FusionDataset& f, const std::string& chi,
                                                   const Integer& n_order, long max_order,
                                                   const BranchAssignment& b);

/// Transport of a parent class function along the fusion map.
std::map<std::string, Cyclotomic> restrict_to_subgroup(
    const FusionDataset& f, const std::map<std::string, Cyclotomic>& parent_values,
    const BranchAssignment& b);

/// Multiplicities <f, chi_i> against a complete complex table; every
/// multiplicity must come out a nonnegative integer.
std::map<std::string, Integer> decompose(const std::map<std::string, Cyclotomic>& values,
                                         const CharacterTable& t);

struct ConstituentCandidate {
    Cyclotomic value;
    Integer degree;
};

/// All nonnegative integer vectors x with sum x_i deg_i = target_degree and
/// sum x_i val_i = target_value.
std::vector<std::vector<long>> constituent_search(const Integer& target_degree,
                                                  const std::vector<ConstituentCandidate>& candidates,
                                                  const Cyclotomic& target_value);

ValidationReport validate_fusion(const FusionDataset& f, const CharacterTable* parent = nullptr);

}  // namespace charres

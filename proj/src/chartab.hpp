#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactnum.hpp"

namespace charres {

struct ConjugacyClass {
    std::string name;
    std::optional<Integer> length;  // unknown in partial tables ("length ?")
    long element_order = 1;
    std::map<long, std::string> power_map;  // prime -> class of g^p
};

enum class CharKind { Complex, Brauer };

struct Character {
    std::string name;
    CharKind kind = CharKind::Complex;
    long ell = 0;  // Brauer characteristic, 0 for complex
    bool faithful = false;
    std::vector<Cyclotomic> values;  // one per class, declaration order
    Integer degree;                  // value at the identity class

    std::string kind_str() const;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
};

/**
 * A (possibly partial) character table.  Covers m.G are modeled as the base
 * table plus cover > 1: character values are then the values at one chosen
 * pre-image per base class.
 *
 * File format (line oriented, '#' comments):
 *   group <name> order <N> center <Z> cover <m> [partial]
 *   class <name> length <L|?> order <k> [pow <p>=<class> ...]
 *   char <name> kind <complex|brauer:<l>> [faithful] values <v1> ... <vr>
 */
struct CharacterTable {
    std::string group_name;
    Integer order;
    Integer center_order = 1;
    long cover = 1;
    bool complete = true;
    std::vector<ConjugacyClass> classes;
    std::vector<Character> characters;

    static CharacterTable parse(std::istream& in, const std::string& source);
    static CharacterTable load(const std::string& path);

    bool has_class(const std::string& name) const;
    size_t class_index(const std::string& name) const;  // throws DataError
    const Character& character(const std::string& name) const;
    size_t identity_index() const;

private:
    std::map<std::string, size_t> index_;
    void build_index();
};

/// Runs every structural sanity check; failures are reported, not thrown.
ValidationReport validate_table(const CharacterTable& t);

/// (1/|G|) sum over classes of |K| a(K) conj(b(K)); complete tables only.
Rational inner_product(const CharacterTable& t, const Character& a, const Character& b);

/// Class of g^k for g in cls, chased through the prime power map.
std::string power_class(const CharacterTable& t, const std::string& cls, long k);

}  // namespace charres

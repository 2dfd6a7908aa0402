#include "chartab.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace charres {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

Integer parse_integer(const std::string& tok, long lineno) {
    try {
        return Integer(tok);
    } catch (...) {
        throw ParseError("expected integer, got '" + tok + "'", lineno);
    }
}

long parse_long(const std::string& tok, long lineno) {
    Integer v = parse_integer(tok, lineno);
    if (v < 1 || v > 1000000) throw ParseError("value out of range: " + tok, lineno);
    return static_cast<long>(v);
}

std::vector<long> small_primes_dividing(long k) {
    std::vector<long> ps;
    for (long p = 2; p * p <= k; ++p)
        if (k % p == 0) {
            ps.push_back(p);
            while (k % p == 0) k /= p;
        }
    if (k > 1) ps.push_back(k);
    return ps;
}

}  // namespace

std::string Character::kind_str() const {
    if (kind == CharKind::Complex) return "complex";
    return "brauer:" + std::to_string(ell);
}

bool ValidationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

void CharacterTable::build_index() {
    index_.clear();
    for (size_t i = 0; i < classes.size(); ++i) {
        if (!index_.emplace(classes[i].name, i).second)
            throw DataError("duplicate class name: " + classes[i].name);
    }
}

bool CharacterTable::has_class(const std::string& name) const { return index_.count(name) > 0; }

size_t CharacterTable::class_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DataError("unknown class: " + name);
    return it->second;
}

const Character& CharacterTable::character(const std::string& name) const {
    for (const auto& ch : characters)
        if (ch.name == name) return ch;
    throw DataError("unknown character: " + name);
}

size_t CharacterTable::identity_index() const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].element_order == 1) return i;
    throw DataError("table has no identity class");
}

CharacterTable CharacterTable::parse(std::istream& in, const std::string& source) {
    CharacterTable t;
    bool saw_group = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "group") {
            // group <name> order <N> center <Z> cover <m> [partial]
            if (toks.size() < 8 || toks[2] != "order" || toks[4] != "center" || toks[6] != "cover")
                throw ParseError("malformed group line in " + source, lineno);
            t.group_name = toks[1];
            t.order = parse_integer(toks[3], lineno);
            t.center_order = parse_integer(toks[5], lineno);
            t.cover = parse_long(toks[7], lineno);
            t.complete = true;
            for (size_t i = 8; i < toks.size(); ++i) {
                if (toks[i] == "partial")
                    t.complete = false;
                else
                    throw ParseError("unknown group attribute '" + toks[i] + "'", lineno);
            }
            if (t.order < 1 || t.center_order < 1) throw ParseError("group orders must be positive", lineno);
            saw_group = true;
        } else if (kw == "class") {
            if (!saw_group) throw ParseError("class before group line", lineno);
            if (toks.size() < 6 || toks[2] != "length" || toks[4] != "order")
                throw ParseError("malformed class line", lineno);
            ConjugacyClass c;
            c.name = toks[1];
            if (toks[3] == "?") {
                if (t.complete) throw ParseError("unknown class length in a complete table", lineno);
            } else {
                c.length = parse_integer(toks[3], lineno);
                if (*c.length < 1) throw ParseError("class length must be positive", lineno);
            }
            c.element_order = parse_long(toks[5], lineno);
            for (size_t i = 6; i < toks.size(); ++i) {
                if (toks[i] != "pow" || i + 1 >= toks.size())
                    throw ParseError("malformed power map entry", lineno);
                const std::string& spec = toks[++i];
                auto eq = spec.find('=');
                if (eq == std::string::npos) throw ParseError("malformed power map entry '" + spec + "'", lineno);
                long p = parse_long(spec.substr(0, eq), lineno);
                c.power_map[p] = spec.substr(eq + 1);
            }
            t.classes.push_back(std::move(c));
        } else if (kw == "char") {
            if (!saw_group) throw ParseError("char before group line", lineno);
            if (toks.size() < 5 || toks[2] != "kind")
                throw ParseError("malformed char line", lineno);
            Character ch;
            ch.name = toks[1];
            const std::string& kind = toks[3];
            if (kind == "complex") {
                ch.kind = CharKind::Complex;
            } else if (kind.rfind("brauer:", 0) == 0) {
                ch.kind = CharKind::Brauer;
                ch.ell = parse_long(kind.substr(7), lineno);
            } else {
                throw ParseError("unknown character kind '" + kind + "'", lineno);
            }
            size_t i = 4;
            if (i < toks.size() && toks[i] == "faithful") {
                ch.faithful = true;
                ++i;
            }
            if (i >= toks.size() || toks[i] != "values")
                throw ParseError("char line missing values", lineno);
            ++i;
            for (; i < toks.size(); ++i) {
                try {
                    ch.values.push_back(Cyclotomic::parse(toks[i]));
                } catch (const ParseError& e) {
                    throw ParseError(std::string(e.what()) + " in value '" + toks[i] + "'", lineno);
                }
            }
            if (ch.values.size() != t.classes.size())
                throw ParseError("character " + ch.name + " has " + std::to_string(ch.values.size()) +
                                     " values for " + std::to_string(t.classes.size()) + " classes",
                                 lineno);
            t.characters.push_back(std::move(ch));
        } else {
            throw ParseError("unknown keyword '" + kw + "' in " + source, lineno);
        }
    }
    if (!saw_group) throw ParseError("no group line in " + source);
    t.build_index();
    {
        std::map<std::string, int> seen;
        for (const auto& ch : t.characters)
            if (++seen[ch.name] > 1) throw DataError("duplicate character name: " + ch.name);
    }
    size_t id = t.identity_index();
    for (auto& ch : t.characters) {
        const Cyclotomic& v = ch.values[id];
        if (!v.is_integer() || v.to_rational() <= 0)
            throw DataError("character " + ch.name + " has non-positive-integer degree " + v.str());
        ch.degree = numerator(v.to_rational());
    }
    return t;
}

CharacterTable CharacterTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open table file: " + path);
    return parse(in, path);
}

ValidationReport validate_table(const CharacterTable& t) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool ok, const std::string& detail) {
        rep.checks.push_back({name, ok, detail});
    };

    // identity class
    {
        bool ok = false;
        std::string detail;
        try {
            size_t id = t.identity_index();
            const auto& c = t.classes[id];
            ok = (!c.length || *c.length == 1) && c.element_order == 1;
            detail = "class " + c.name;
            if (!ok) detail += " must have length 1 and element order 1";
        } catch (const DataError& e) {
            detail = e.what();
        }
        add("identity-class", ok, detail);
    }

    // class length sum (complete tables)
    if (t.complete) {
        Integer sum = 0;
        bool known = true;
        for (const auto& c : t.classes) {
            if (!c.length) { known = false; break; }
            sum += *c.length;
        }
        std::ostringstream os;
        os << "sum " << sum << " vs order " << t.order;
        add("class-length-sum", known && sum == t.order, os.str());
    }

    // lengths divide order
    {
        std::string bad;
        for (const auto& c : t.classes)
            if (c.length && (*c.length == 0 || t.order % *c.length != 0)) bad += c.name + " ";
        add("class-length-divides-order", bad.empty(), bad.empty() ? "" : "offenders: " + bad);
    }

    // power map closure and order arithmetic
    {
        std::string bad;
        for (const auto& c : t.classes)
            for (const auto& [p, target] : c.power_map) {
                if (!t.has_class(target)) {
                    bad += c.name + "^" + std::to_string(p) + "->" + target + "(missing) ";
                    continue;
                }
                long expect = c.element_order / std::gcd(p, c.element_order);
                long got = t.classes[t.class_index(target)].element_order;
                if (expect != got)
                    bad += c.name + "^" + std::to_string(p) + " order " + std::to_string(got) +
                           " expected " + std::to_string(expect) + " ";
            }
        add("power-map-closure", bad.empty(), bad.empty() ? "" : "offenders: " + bad);
    }

    // degrees divide the group order (complete complex tables)
    if (t.complete) {
        std::string bad;
        for (const auto& ch : t.characters) {
            if (ch.kind != CharKind::Complex) continue;
            Integer full_order = t.order * t.cover;
            if (full_order % ch.degree != 0) bad += ch.name + " ";
        }
        add("degree-divides-order", bad.empty(), bad.empty() ? "" : "offenders: " + bad);
    }

    // orthogonality and degree square sum (complete complex tables, base group)
    if (t.complete && t.cover == 1) {
        bool all_complex = true;
        for (const auto& ch : t.characters)
            if (ch.kind != CharKind::Complex) all_complex = false;
        if (all_complex && !t.characters.empty()) {
            std::string bad;
            for (size_t i = 0; i < t.characters.size(); ++i)
                for (size_t j = i; j < t.characters.size(); ++j) {
                    try {
                        Rational ip = inner_product(t, t.characters[i], t.characters[j]);
                        Rational expect = (i == j) ? 1 : 0;
                        if (ip != expect)
                            bad += "<" + t.characters[i].name + "," + t.characters[j].name + ">=" +
                                   ip.str() + " ";
                    } catch (const std::exception&) {
                        bad += "<" + t.characters[i].name + "," + t.characters[j].name + "> irrational ";
                    }
                }
            add("row-orthogonality", bad.empty(), bad.empty() ? "" : "offenders: " + bad);

            Integer sq = 0;
            for (const auto& ch : t.characters) sq += ch.degree * ch.degree;
            std::ostringstream os;
            os << "sum of squares " << sq << " vs order " << t.order;
            add("degree-square-sum", sq == t.order, os.str());
        }
    }

    return rep;
}

Rational inner_product(const CharacterTable& t, const Character& a, const Character& b) {
    if (!t.complete) throw DataError("inner product requires a complete table");
    if (a.values.size() != t.classes.size() || b.values.size() != t.classes.size())
        throw DataError("missing value: character not defined on all classes");
    Cyclotomic acc;
    for (size_t i = 0; i < t.classes.size(); ++i) {
        if (!t.classes[i].length) throw DataError("missing class length for " + t.classes[i].name);
        acc += Cyclotomic(*t.classes[i].length) * a.values[i] * b.values[i].conjugate();
    }
    Cyclotomic result = acc * Cyclotomic(Rational(Integer(1), t.order));
    return result.to_rational();  // NotRational escapes to the caller
}

std::string power_class(const CharacterTable& t, const std::string& cls, long k) {
    if (k < 1) throw DomainError("power must be positive");
    size_t idx = t.class_index(cls);
    long ord = t.classes[idx].element_order;
    long r = k % ord;
    if (r == 0) return t.classes[t.identity_index()].name;
    std::string cur = cls;
    for (long p : small_primes_dividing(r)) {
        long m = r;
        while (m % p == 0) {
            const auto& pm = t.classes[t.class_index(cur)].power_map;
            auto it = pm.find(p);
            if (it == pm.end())
                throw DataError("power map incomplete: class " + cur + " has no entry for prime " +
                                std::to_string(p));
            cur = it->second;
            m /= p;
        }
    }
    return cur;
}

}  // namespace charres

#include "fusion.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
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

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

Integer parse_integer(const std::string& tok, long lineno) {
    try {
        return Integer(tok);
    } catch (...) {
        throw ParseError("expected integer, got '" + tok + "'", lineno);
    }
}

}  // namespace

long FusionRow::max_order() const { return *std::max_element(orders.begin(), orders.end()); }
long FusionRow::min_order() const { return *std::min_element(orders.begin(), orders.end()); }

size_t FusionDataset::row_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw DataError("unknown fusion row: " + name);
    return it->second;
}

size_t FusionDataset::identity_row() const {
    for (size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].aggregate && rows[i].orders.size() == 1 && rows[i].orders[0] == 1) return i;
    throw DataError("fusion dataset has no identity row");
}

bool FusionDataset::row_is_active(size_t idx) const { return active_.count(rows[idx].name) > 0; }

std::vector<std::string> FusionDataset::character_names() const {
    std::vector<std::string> out;
    for (const auto& [name, vals] : char_values) out.push_back(name);
    return out;
}

void FusionDataset::finish() {
    index_.clear();
    for (size_t i = 0; i < rows.size(); ++i)
        if (!index_.emplace(rows[i].name, i).second)
            throw DataError("duplicate fusion row: " + rows[i].name);
    active_.clear();
    for (size_t i = 0; i < rows.size(); ++i) {
        const FusionRow& r = rows[i];
        if (r.aggregate || r.targets.size() <= 1) continue;
        bool value_split = false;
        for (const auto& [chi, vals] : char_values)
            if (vals[i].size() > 1) value_split = true;
        if (!r.link.empty() || value_split) active_.insert(r.name);
    }
}

FusionDataset FusionDataset::parse(std::istream& in, const std::string& source) {
    FusionDataset f;
    bool saw_header = false;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(strip_comment(line));
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "fusion") {
            // fusion <subname> order <H> into <parent> cover <m>
            if (toks.size() != 8 || toks[2] != "order" || toks[4] != "into" || toks[6] != "cover")
                throw ParseError("malformed fusion header in " + source, lineno);
            f.subgroup_name = toks[1];
            f.subgroup_order = parse_integer(toks[3], lineno);
            f.parent_name = toks[5];
            f.cover = static_cast<long>(parse_integer(toks[7], lineno));
            if (f.subgroup_order < 1 || f.cover < 1)
                throw ParseError("orders must be positive", lineno);
            saw_header = true;
        } else if (kw == "row") {
            if (!saw_header) throw ParseError("row before fusion header", lineno);
            // row <name> length <L> order <k>[|..] -> <t1>[|..] [link <id>]
            if (toks.size() < 7 || toks[2] != "length" || toks[4] != "order" || toks[6] != "->")
                throw ParseError("malformed row line", lineno);
            FusionRow r;
            r.name = toks[1];
            r.length = parse_integer(toks[3], lineno);
            if (r.length < 1) throw ParseError("row length must be positive", lineno);
            for (const auto& o : split(toks[5], '|')) {
                Integer v = parse_integer(o, lineno);
                if (v < 1) throw ParseError("element order must be positive", lineno);
                r.orders.push_back(static_cast<long>(v));
            }
            if (toks.size() < 8) throw ParseError("row line missing fusion target", lineno);
            r.targets = split(toks[7], '|');
            for (const auto& t : r.targets)
                if (t.empty()) throw ParseError("empty fusion target", lineno);
            size_t i = 8;
            if (i < toks.size()) {
                if (toks[i] != "link" || i + 1 >= toks.size())
                    throw ParseError("malformed link clause", lineno);
                r.link = toks[i + 1];
                i += 2;
            }
            if (i != toks.size()) throw ParseError("trailing tokens on row line", lineno);
            f.rows.push_back(std::move(r));
        } else if (kw == "agg") {
            if (!saw_header) throw ParseError("agg before fusion header", lineno);
            // agg <name> length <L> orders <k1>[,<k2>...] [covers <c1>,<c2>...]
            if (toks.size() < 6 || toks[2] != "length" || toks[4] != "orders")
                throw ParseError("malformed agg line", lineno);
            FusionRow r;
            r.aggregate = true;
            r.name = toks[1];
            r.length = parse_integer(toks[3], lineno);
            if (r.length < 1) throw ParseError("agg length must be positive", lineno);
            for (const auto& o : split(toks[5], ',')) {
                Integer v = parse_integer(o, lineno);
                if (v < 1) throw ParseError("element order must be positive", lineno);
                r.orders.push_back(static_cast<long>(v));
            }
            if (toks.size() > 6) {
                if (toks.size() != 8 || toks[6] != "covers")
                    throw ParseError("malformed agg covers clause", lineno);
                r.targets = split(toks[7], ',');
            }
            f.rows.push_back(std::move(r));
        } else if (kw == "values") {
            if (!saw_header) throw ParseError("values before fusion header", lineno);
            if (toks.size() < 2) throw ParseError("malformed values line", lineno);
            std::string chi = toks[1];
            size_t i = 2;
            bool faithful = false;
            if (i < toks.size() && toks[i] == "faithful") {
                faithful = true;
                ++i;
            }
            std::vector<std::vector<Cyclotomic>> vals;
            for (; i < toks.size(); ++i) {
                std::vector<Cyclotomic> alts;
                for (const auto& piece : split(toks[i], '|')) {
                    try {
                        alts.push_back(Cyclotomic::parse(piece));
                    } catch (const ParseError& e) {
                        throw ParseError(std::string(e.what()) + " in value '" + toks[i] + "'", lineno);
                    }
                }
                vals.push_back(std::move(alts));
            }
            if (vals.size() != f.rows.size())
                throw ParseError("character " + chi + " has " + std::to_string(vals.size()) +
                                     " values for " + std::to_string(f.rows.size()) + " rows",
                                 lineno);
            for (size_t r = 0; r < vals.size(); ++r) {
                size_t n = vals[r].size();
                size_t tn = f.rows[r].targets.size();
                if (n != 1 && (f.rows[r].aggregate || n != tn))
                    throw ParseError("value alternatives for row " + f.rows[r].name +
                                         " do not match its targets",
                                     lineno);
            }
            if (!f.char_values.emplace(chi, std::move(vals)).second)
                throw ParseError("duplicate values row for " + chi, lineno);
            if (faithful) f.faithful_chars.insert(chi);
        } else {
            throw ParseError("unknown keyword '" + kw + "' in " + source, lineno);
        }
    }
    if (!saw_header) throw ParseError("no fusion header in " + source);
    f.finish();
    return f;
}

FusionDataset FusionDataset::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open fusion file: " + path);
    return parse(in, path);
}

std::vector<BranchAssignment> enumerate_branches(const FusionDataset& f) {
    // choice keys: link ids (sorted), then unlinked active rows in row order
    std::map<std::string, size_t> link_width;
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const FusionRow& r = f.rows[i];
        if (r.link.empty()) continue;
        auto [it, inserted] = link_width.emplace(r.link, r.targets.size());
        if (!inserted && it->second != r.targets.size())
            throw DataError("link " + r.link + " ties rows with different alternative counts");
    }
    std::vector<std::pair<std::string, size_t>> keys(link_width.begin(), link_width.end());
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const FusionRow& r = f.rows[i];
        if (r.link.empty() && f.row_is_active(i)) keys.emplace_back(r.name, r.targets.size());
    }
    std::vector<BranchAssignment> out;
    BranchAssignment cur;
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == keys.size()) {
            out.push_back(cur);
            return;
        }
        for (size_t v = 0; v < keys[k].second; ++v) {
            cur[keys[k].first] = v;
            rec(k + 1);
        }
        cur.erase(keys[k].first);
    };
    rec(0);
    return out;
}

size_t chosen_index(const FusionDataset& f, size_t row, const BranchAssignment& b) {
    const FusionRow& r = f.rows[row];
    if (r.aggregate || r.targets.size() <= 1) return 0;
    if (!r.link.empty()) {
        auto it = b.find(r.link);
        if (it == b.end()) throw DataError("branch assignment missing link " + r.link);
        return it->second;
    }
    if (f.row_is_active(row)) {
        auto it = b.find(r.name);
        if (it == b.end()) throw DataError("branch assignment missing row " + r.name);
        return it->second;
    }
    return 0;  // passive ambiguity
}

const Cyclotomic& value_at(const FusionDataset& f, const std::string& chi, size_t row,
                           const BranchAssignment& b) {
    auto it = f.char_values.find(chi);
    if (it == f.char_values.end()) throw DataError("unknown character in fusion data: " + chi);
    const std::vector<Cyclotomic>& alts = it->second[row];
    if (alts.size() == 1) return alts[0];
    return alts[chosen_index(f, row, b)];
}

std::string branch_label(const FusionDataset& f, const BranchAssignment& b) {
    std::string out;
    for (size_t i = 0; i < f.rows.size(); ++i) {
        if (!f.row_is_active(i)) continue;
        if (!out.empty()) out += ' ';
        out += f.rows[i].name + "=" + f.rows[i].targets[chosen_index(f, i, b)];
    }
    return out.empty() ? "(none)" : out;
}

namespace {

void require_cover_faithful(const FusionDataset& f, const std::string& chi) {
    if (f.cover > 1 && f.faithful_chars.count(chi) == 0)
        throw DataError("dataset is a cover (m=" + std::to_string(f.cover) + "); character " + chi +
                        " is not flagged faithful, pre-image norms are not valid for it");
}

}  // namespace

NormResult restriction_norm(const FusionDataset& f, const std::string& chi,
                            const BranchAssignment& b) {
    require_cover_faithful(f, chi);
    Cyclotomic acc;
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const Cyclotomic& v = value_at(f, chi, i, b);
        acc += Cyclotomic(f.rows[i].length) * v.norm_squared();
    }
    NormResult res;
    res.sum = acc.to_rational();
    res.norm = res.sum / Rational(f.subgroup_order);
    return res;
}

NormResult normal_part_norm(const FusionDataset& f, const std::string& chi,
                            const std::set<std::string>& subset, const Integer& n_order,
                            const BranchAssignment& b) {
    require_cover_faithful(f, chi);
    if (n_order < 1) throw DomainError("normal part order must be positive");
    bool has_identity = false;
    Integer exact = 0;
    Integer flex = 0;
    Cyclotomic acc;
    for (const auto& name : subset) {
        size_t i = f.row_index(name);
        const FusionRow& r = f.rows[i];
        if (r.aggregate) {
            const Cyclotomic& v = value_at(f, chi, i, b);
            if (!v.is_zero())
                throw DataError("aggregate row " + r.name +
                                " has nonzero value; cannot take a portion of it");
            flex += r.length;
            continue;
        }
        if (r.orders.size() == 1 && r.orders[0] == 1) has_identity = true;
        exact += r.length;
        const Cyclotomic& v = value_at(f, chi, i, b);
        acc += Cyclotomic(r.length) * v.norm_squared();
    }
    if (!has_identity) throw DataError("subset must contain the identity class");
    if (exact > n_order || exact + flex < n_order) {
        std::ostringstream os;
        os << "subset lengths sum to " << exact;
        if (flex > 0) os << " (+ up to " << flex << " aggregate)";
        os << ", not " << n_order;
        throw DataError(os.str());
    }
    NormResult res;
    res.sum = acc.to_rational();
    res.norm = res.sum / Rational(n_order);
    return res;
}

std::vector<NormalSubset> enumerate_normal_subsets(const FusionDataset& f, const std::string& chi,
                                                   const Integer& n_order, long max_order,
                                                   const BranchAssignment& b) {
    require_cover_faithful(f, chi);
    if (n_order < 1) throw DomainError("normal part order must be positive");
    size_t id = f.identity_row();

    // a class inside a normal subgroup of order n_order has element order
    // dividing n_order (and under the caller's exponent filter)
    auto order_fits = [&](long o) { return o <= max_order && n_order % o == 0; };

    std::vector<size_t> candidates;  // non-aggregate rows passing the order filter
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const FusionRow& r = f.rows[i];
        if (r.aggregate) continue;
        if (i == id) continue;
        bool ok = true;
        for (long o : r.orders)
            if (!order_fits(o)) ok = false;
        if (ok) candidates.push_back(i);
    }
    std::vector<size_t> pool;  // zero-value aggregates usable as filler
    Integer pool_max = 0;
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const FusionRow& r = f.rows[i];
        if (!r.aggregate) continue;
        bool any = false;
        for (long o : r.orders)
            if (order_fits(o)) any = true;
        if (!any) continue;
        if (!value_at(f, chi, i, b).is_zero()) continue;
        pool.push_back(i);
        pool_max += r.length;
    }

    std::vector<NormalSubset> out;
    std::vector<size_t> chosen;
    Integer base = f.rows[id].length;

    std::function<void(size_t, Integer)> rec = [&](size_t k, Integer sum) {
        if (sum > n_order) return;
        if (k == candidates.size()) {
            Integer deficit = n_order - sum;
            if (deficit > pool_max) return;
            NormalSubset s;
            s.members.push_back(f.rows[id].name);
            Cyclotomic acc = Cyclotomic(f.rows[id].length) *
                             value_at(f, chi, id, b).norm_squared();
            for (size_t i : chosen) {
                s.members.push_back(f.rows[i].name);
                acc += Cyclotomic(f.rows[i].length) * value_at(f, chi, i, b).norm_squared();
            }
            Integer left = deficit;
            for (size_t i : pool) {
                if (left == 0) break;
                Integer take = std::min(left, f.rows[i].length);
                s.agg_used.emplace_back(f.rows[i].name, take);
                left -= take;
            }
            s.sum = acc.to_rational();
            s.norm = s.sum / Rational(n_order);
            s.integral = rational_is_integer(s.norm) && s.norm > 0;
            std::sort(s.members.begin(), s.members.end());
            out.push_back(std::move(s));
            return;
        }
        rec(k + 1, sum);
        chosen.push_back(candidates[k]);
        rec(k + 1, sum + f.rows[candidates[k]].length);
        chosen.pop_back();
    };
    rec(0, base);

    std::sort(out.begin(), out.end(), [](const NormalSubset& a, const NormalSubset& c) {
        if (a.members.size() != c.members.size()) return a.members.size() < c.members.size();
        return a.members < c.members;
    });
    return out;
}

std::map<std::string, Cyclotomic> restrict_to_subgroup(
    const FusionDataset& f, const std::map<std::string, Cyclotomic>& parent_values,
    const BranchAssignment& b) {
    std::map<std::string, Cyclotomic> out;
    auto fetch = [&](const std::string& cls) -> const Cyclotomic& {
        auto it = parent_values.find(cls);
        if (it == parent_values.end()) throw DataError("missing parent value at class " + cls);
        return it->second;
    };
    for (size_t i = 0; i < f.rows.size(); ++i) {
        const FusionRow& r = f.rows[i];
        if (r.aggregate || !f.row_is_active(i)) {
            // aggregate rows and passive ambiguity: every covered class must
            // carry the same parent value
            if (r.targets.empty())
                throw DataError("aggregate row " + r.name + " lists no covered classes");
            const Cyclotomic& first = fetch(r.targets[0]);
            for (size_t t = 1; t < r.targets.size(); ++t)
                if (fetch(r.targets[t]) != first)
                    throw DataError("row " + r.name +
                                    " covers classes with different parent values");
            out.emplace(r.name, first);
        } else {
            out.emplace(r.name, fetch(r.targets[chosen_index(f, i, b)]));
        }
    }
    return out;
}

std::map<std::string, Integer> decompose(const std::map<std::string, Cyclotomic>& values,
                                         const CharacterTable& t) {
    if (!t.complete) throw DataError("decompose requires a complete table");
    for (const auto& ch : t.characters)
        if (ch.kind != CharKind::Complex)
            throw DataError("decompose requires a complex table");
    std::map<std::string, Integer> out;
    for (const auto& ch : t.characters) {
        Cyclotomic acc;
        for (size_t i = 0; i < t.classes.size(); ++i) {
            auto it = values.find(t.classes[i].name);
            if (it == values.end())
                throw DataError("class function missing value at " + t.classes[i].name);
            if (!t.classes[i].length) throw DataError("missing class length for " + t.classes[i].name);
            acc += Cyclotomic(*t.classes[i].length) * it->second * ch.values[i].conjugate();
        }
        Rational m;
        try {
            m = (acc * Cyclotomic(Rational(Integer(1), t.order))).to_rational();
        } catch (const NotRational&) {
            throw DataError("not a character: multiplicity of " + ch.name + " is irrational");
        }
        if (!rational_is_integer(m) || m < 0)
            throw DataError("not a character: multiplicity of " + ch.name + " is " + m.str());
        out.emplace(ch.name, numerator(m));
    }
    return out;
}

std::vector<std::vector<long>> constituent_search(const Integer& target_degree,
                                                  const std::vector<ConstituentCandidate>& candidates,
                                                  const Cyclotomic& target_value) {
    for (const auto& c : candidates)
        if (c.degree < 1) throw DomainError("candidate degrees must be positive");
    if (target_degree < 1) throw DomainError("target degree must be positive");
    std::vector<std::vector<long>> out;
    std::vector<long> x(candidates.size(), 0);
    std::function<void(size_t, Integer, Cyclotomic)> rec = [&](size_t k, Integer budget,
                                                               Cyclotomic value) {
        if (k == candidates.size()) {
            if (budget == 0 && value == target_value) out.push_back(x);
            return;
        }
        Integer max_count = budget / candidates[k].degree;
        Cyclotomic acc = value;
        for (Integer c = 0; c <= max_count; ++c) {
            x[k] = static_cast<long>(c);
            rec(k + 1, budget - c * candidates[k].degree, acc);
            acc += candidates[k].value;
        }
        x[k] = 0;
    };
    rec(0, target_degree, Cyclotomic(0));
    return out;
}

ValidationReport validate_fusion(const FusionDataset& f, const CharacterTable* parent) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool ok, const std::string& detail) {
        rep.checks.push_back({name, ok, detail});
    };

    {
        Integer sum = 0;
        for (const auto& r : f.rows) sum += r.length;
        std::ostringstream os;
        os << "sum " << sum << " vs subgroup order " << f.subgroup_order;
        add("fusion-length-sum", sum == f.subgroup_order, os.str());
    }

    {
        bool ok = true;
        std::string detail;
        try {
            f.identity_row();
            ok = f.rows[f.identity_row()].length == 1;
            if (!ok) detail = "identity row must have length 1";
        } catch (const DataError& e) {
            ok = false;
            detail = e.what();
        }
        add("fusion-identity-row", ok, detail);
    }

    {
        std::map<std::string, size_t> width;
        std::string bad;
        for (const auto& r : f.rows) {
            if (r.link.empty()) continue;
            auto [it, inserted] = width.emplace(r.link, r.targets.size());
            if (!inserted && it->second != r.targets.size()) bad += r.link + " ";
        }
        add("fusion-link-widths", bad.empty(), bad.empty() ? "" : "mismatched links: " + bad);
    }

    if (parent != nullptr) {
        std::string bad;
        for (const auto& r : f.rows) {
            if (r.targets.empty()) continue;  // aggregate without covers list
            std::set<long> target_orders;
            bool missing = false;
            for (const auto& t : r.targets) {
                if (!parent->has_class(t)) {
                    bad += r.name + "->" + t + "(missing) ";
                    missing = true;
                    continue;
                }
                target_orders.insert(parent->classes[parent->class_index(t)].element_order);
            }
            std::set<long> row_orders(r.orders.begin(), r.orders.end());
            if (!missing && target_orders != row_orders) bad += r.name + "(order-mismatch) ";
        }
        add("fusion-parent-consistency", bad.empty(), bad.empty() ? "" : "offenders: " + bad);
    }

    return rep;
}

}  // namespace charres

#include "degrees.hpp"

#include <fstream>
#include <memory>
#include <sstream>

namespace charres {

namespace {

Integer ipow(Integer base, long e) {
    Integer r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

Integer checked_div(const Integer& num, long den) {
    if (num % den != 0)
        throw DataError("degree polynomial did not evaluate to an integer: " + num.str() + "/" +
                        std::to_string(den));
    return num / den;
}

}  // namespace

bool is_prime(long v) {
    if (v < 2) return false;
    for (long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

PrimePower prime_power(long q) {
    if (q < 2) throw DomainError(std::to_string(q) + " is not a prime power");
    long p = 0;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1, q};
    long n = 0;
    long rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++n;
    }
    if (rest != 1) throw DomainError(std::to_string(q) + " is not a prime power");
    return {p, n, q};
}

EllClass EllClass::make(long ell, const PrimePower& q) {
    EllClass e;
    e.ell = ell;
    if (ell == 0) {
        e.kind = Kind::Zero;
        return e;
    }
    if (!is_prime(ell)) throw DomainError("l = " + std::to_string(ell) + " is not prime");
    if (ell == q.p)
        throw DomainError("l = " + std::to_string(ell) + " divides q = " + std::to_string(q.q) +
                          "; only cross characteristic is supported");
    if (ell == 2)
        e.kind = Kind::Two;
    else if (ell == 3)
        e.kind = Kind::Three;
    else
        e.kind = Kind::Large;
    return e;
}

std::string EllClass::str() const { return kind == Kind::Zero ? "0" : std::to_string(ell); }

std::string DegreeValue::str() const { return (exact ? "" : ">=") + value.str(); }

std::vector<std::pair<std::string, Integer>> complex_degrees(long q) {
    PrimePower pp = prime_power(q);
    if (q < 5) throw DomainError("complex degree catalog requires q >= 5");
    Integer Q = q;
    Integer q2 = Q * Q, q3 = q2 * Q, q4 = q3 * Q, q6 = q4 * q2;
    Integer a = q4 + q2 + 1;            // q^4+q^2+1
    Integer pm1 = Q - 1, pp1 = Q + 1;
    std::vector<std::pair<std::string, Integer>> out;
    out.emplace_back("X11", Integer(1));
    out.emplace_back("X12", q6);
    Integer x13 = checked_div(Q * a, 3);
    out.emplace_back("X13", x13);
    out.emplace_back("X14", x13);
    out.emplace_back("X15", checked_div(Q * pp1 * pp1 * (q2 - Q + 1), 2));
    out.emplace_back("X16", checked_div(Q * pp1 * pp1 * (q2 + Q + 1), 6));
    out.emplace_back("X17", checked_div(Q * pm1 * pm1 * (q2 + Q + 1), 2));
    out.emplace_back("X18", checked_div(Q * pm1 * pm1 * (q2 - Q + 1), 6));
    Integer x19 = checked_div(Q * pm1 * pm1 * pp1 * pp1, 3);
    out.emplace_back("X19", x19);
    out.emplace_back("X19b", x19);
    if (q % 3 != 0) {
        Integer eps = (q % 3 == 1) ? 1 : -1;
        out.emplace_back("X31", q3 * (q3 + eps));
        out.emplace_back("X32", q3 + eps);
        out.emplace_back("X33", Q * (Q + eps) * (q3 + eps));
    }
    if (pp.p != 2) {
        out.emplace_back("X21", q2 * a);
        out.emplace_back("X22", a);
        out.emplace_back("X23", Q * a);
        out.emplace_back("X24", Q * a);
    }
    out.emplace_back("X1a", Q * pp1 * a);
    out.emplace_back("X1b", Q * pp1 * a);
    out.emplace_back("X2a", Q * pm1 * a);
    out.emplace_back("X2b", Q * pm1 * a);
    out.emplace_back("X1a'", pp1 * a);
    out.emplace_back("X1b'", pp1 * a);
    out.emplace_back("X2a'", pm1 * a);
    out.emplace_back("X2b'", pm1 * a);
    out.emplace_back("X1", pp1 * pp1 * a);
    out.emplace_back("X2", pm1 * pm1 * a);
    out.emplace_back("Xa", q6 - 1);
    out.emplace_back("Xb", q6 - 1);
    out.emplace_back("X3", (q2 - 1) * (q2 - 1) * (q2 - Q + 1));
    out.emplace_back("X6", (q2 - 1) * (q2 - 1) * (q2 + Q + 1));
    return out;
}

Integer d1(long q, const EllClass& ell) {
    prime_power(q);
    if (q < 5) throw DomainError("d1 requires q >= 5");
    Integer Q = q;
    Integer q2 = Q * Q, q3 = q2 * Q, q4 = q3 * Q;
    long r = q % 3;
    if (r == 1) return (ell.kind == EllClass::Kind::Three) ? q3 : Integer(q3 + 1);
    if (r == 2) return q3 - 1;
    return (ell.kind == EllClass::Kind::Two) ? Integer(q4 + q2) : Integer(q4 + q2 + 1);
}

DegreeValue d2(long q, const EllClass& ell) {
    PrimePower pp = prime_power(q);
    if (q < 5) throw DomainError("d2 requires q >= 5");
    Integer Q = q;
    Integer q2 = Q * Q, q3 = q2 * Q, q4 = q3 * Q;
    Integer small = checked_div(Q * (Q - 1) * (Q - 1) * (q2 - Q + 1), 6);
    switch (ell.kind) {
        case EllClass::Kind::Two:
            if (pp.p == 3 || q == 5 || q == 7) return {true, small};
            return {true, q4 + q2};  // p >= 5, q >= 11
        case EllClass::Kind::Three:
            if (q == 5 || q == 7 || (pp.p == 2 && q % 3 == 2)) return {true, small};
            if (pp.p >= 5 && q % 3 == 2 && q >= 11) return {true, q4 + q2 + 1};
            if (q >= 13 && q % 3 == 1) return {false, q4 - q3 + q2};
            throw DomainError("d2 case fell through for q = " + std::to_string(q) + ", l = 3");
        case EllClass::Kind::Zero:
        case EllClass::Kind::Large:
            if (pp.p == 2 || pp.p == 3 || q == 5 || q == 7) return {true, small};
            return {true, q4 + q2 + 1};  // p >= 5, q > 7
    }
    throw DomainError("unreachable");
}

std::vector<std::pair<std::string, DegreeValue>> brauer_degree_bounds(long q, long ell) {
    PrimePower pp = prime_power(q);
    if (q < 5) throw DomainError("Brauer tables require q >= 5");
    if (ell != 2 && ell != 3) throw DomainError("parameterized Brauer tables exist for l = 2, 3 only");
    EllClass::make(ell, pp);  // validates l coprime to q
    Integer Q = q;
    Integer q2 = Q * Q, q3 = q2 * Q, q4 = q3 * Q, q5 = q4 * Q;
    Integer a = q4 + q2 + 1;
    Integer pm1 = Q - 1, pp1 = Q + 1;
    std::vector<std::pair<std::string, DegreeValue>> out;
    auto exact = [&](const std::string& n, const Integer& v) { out.emplace_back(n, DegreeValue{true, v}); };
    auto bound = [&](const std::string& n, const Integer& v) { out.emplace_back(n, DegreeValue{false, v}); };

    if (ell == 2) {
        // q odd here since 2 does not divide q
        if (q % 3 != 0)
            bound("phi12", checked_div(pm1 * pm1 * pp1 * (q3 + 2 * q2 + Q + 3), 3));
        else
            bound("phi12", checked_div(pm1 * pm1 * (q3 + 2 * q2 + 4 * Q + 3), 3));
        Integer phi13 = checked_div(pm1 * (q4 + q3 + 2 * q2 + 2 * Q + 3), 3);
        exact("phi13", phi13);
        exact("phi14", phi13);
        exact("phi15", q4 + q2);
        if (q % 3 != 0) {
            Integer eps = (q % 3 == 1) ? 1 : -1;
            if (q % 3 == 1) {
                exact("phi31", q3 * q3 - 1);
            } else if (q % 4 == 1) {
                exact("phi31", pm1 * pm1 * (q2 + 1) * (q2 + Q + 1));
            } else {
                bound("phi31", checked_div(pm1 * pm1 * (q2 + Q + 1) * (2 * q2 + 2 * Q + 3), 3));
            }
            exact("phi32", q3 + eps);
            exact("phi33", Q * (Q + eps) * (q3 + eps));
        }
        exact("phi1a", (q2 - 1) * a);
        exact("phi1b", (q2 - 1) * a);
        exact("phi2a", pm1 * pm1 * a);
        exact("phi2b", pm1 * pm1 * a);
        return out;
    }

    // ell == 3, split by congruence mod 3
    if (q % 3 == 1) {
        bound("phi12", checked_div(pm1 * pm1 * (q4 + 2 * q3 + 3 * Q + 2), 2));
        bound("phi14", q4 - q3 + q2);  // the two open values are q^2(q^2-q+1) and (1/6)q(q^2-q+1)(q^2+4q+1)
        exact("phi15", checked_div(q5 + q4 + q2 + Q - 2, 2));
        exact("phi16", q3);
        if (pp.p != 2) {
            exact("phi21", q2 * a);
            exact("phi22", a);
            exact("phi23", Q * a);
            exact("phi24", Q * a);
        }
        exact("phi1a", Q * pp1 * a);
        exact("phi1b", Q * pp1 * a);
        exact("phi2a", Q * pm1 * a);
        exact("phi2b", Q * pm1 * a);
    } else if (q % 3 == 2) {
        bound("phi12", checked_div(pm1 * pm1 * (Q + 2) * (Q + 2) * (q2 + Q + 1), 4));
        exact("phi14", checked_div((q2 - 1) * (q3 + 3 * q2 - Q + 6), 6));
        exact("phi15", checked_div(Q * pp1 * pp1 * (q2 - Q + 1), 2));
        exact("phi16", q3 - 1);
        if (pp.p != 2) {
            exact("phi21", pm1 * pm1 * a);
            exact("phi22", a);
            exact("phi23", pm1 * a);
            exact("phi24", pm1 * a);
        }
        exact("phi1a", (q2 - 1) * a);
        exact("phi1b", (q2 - 1) * a);
        exact("phi2a", pm1 * pm1 * a);
        exact("phi2b", pm1 * pm1 * a);
    } else {
        throw DomainError("l = 3 table requires 3 coprime to q");
    }
    return out;
}

std::string GapCharacter::str() const {
    std::string s = base;
    if (reduced) s += "^";
    if (minus_trivial) s += "-1G^";
    return s;
}

GapCharacter unique_gap_character(long q, const EllClass& ell) {
    GapCharacter g;
    g.degree = d1(q, ell);
    g.reduced = ell.kind != EllClass::Kind::Zero;
    if (q % 3 != 0) {
        g.base = "X32";
        g.minus_trivial = (ell.kind == EllClass::Kind::Three && q % 3 == 1);
    } else {
        g.base = "X22";
        g.minus_trivial = (ell.kind == EllClass::Kind::Two);
    }
    return g;
}

std::optional<Family> family_from_string(const std::string& s) {
    if (s == "g2" || s == "G2") return Family::G2;
    if (s == "sz" || s == "Sz" || s == "SZ") return Family::Sz;
    if (s == "ree" || s == "Ree" || s == "2G2" || s == "REE") return Family::Ree;
    return std::nullopt;
}

std::string family_str(Family f) {
    switch (f) {
        case Family::G2: return "g2";
        case Family::Sz: return "sz";
        case Family::Ree: return "ree";
    }
    return "?";
}

PrimePower check_admissible(Family fam, long q) {
    PrimePower pp = prime_power(q);
    switch (fam) {
        case Family::G2:
            if (q < 5) throw DomainError("G2 screen requires q >= 5");
            break;
        case Family::Sz:
            if (pp.p != 2 || pp.n < 3 || pp.n % 2 == 0)
                throw DomainError("Sz(q) requires q = 2^n with n odd, n >= 3");
            break;
        case Family::Ree:
            if (pp.p != 3 || pp.n < 3 || pp.n % 2 == 0)
                throw DomainError("2G2(q) requires q = 3^n with n odd, n >= 3");
            break;
    }
    return pp;
}

// ---------------------------------------------------------------------------
// candidate files: a tiny expression grammar for polynomial orders

namespace {

struct ExprNode {
    enum class Op { Const, Var, Add, Sub, Mul, Pow, Neg } op;
    Integer value;     // Const
    std::string var;   // Var
    std::unique_ptr<ExprNode> lhs, rhs;
};

using ExprPtr = std::unique_ptr<ExprNode>;

struct ExprParser {
    std::string_view s;
    size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (!done()) throw ParseError("trailing characters in expression: " + std::string(s));
        return e;
    }

    ExprPtr expr() {
        ExprPtr left;
        if (!done() && peek() == '-') {
            ++i;
            auto node = std::make_unique<ExprNode>();
            node->op = ExprNode::Op::Neg;
            node->lhs = term();
            left = std::move(node);
        } else {
            left = term();
        }
        while (!done() && (peek() == '+' || peek() == '-')) {
            char op = peek();
            ++i;
            auto node = std::make_unique<ExprNode>();
            node->op = op == '+' ? ExprNode::Op::Add : ExprNode::Op::Sub;
            node->lhs = std::move(left);
            node->rhs = term();
            left = std::move(node);
        }
        return left;
    }

    ExprPtr term() {
        ExprPtr left = power();
        while (!done() && peek() == '*') {
            ++i;
            auto node = std::make_unique<ExprNode>();
            node->op = ExprNode::Op::Mul;
            node->lhs = std::move(left);
            node->rhs = power();
            left = std::move(node);
        }
        return left;
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!done() && peek() == '^') {
            ++i;
            auto node = std::make_unique<ExprNode>();
            node->op = ExprNode::Op::Pow;
            node->lhs = std::move(base);
            node->rhs = primary();
            return node;
        }
        return base;
    }

    ExprPtr primary() {
        if (done()) throw ParseError("unexpected end of expression");
        if (peek() == '(') {
            ++i;
            ExprPtr e = expr();
            if (done() || peek() != ')') throw ParseError("missing ')' in expression");
            ++i;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer v = 0;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + (peek() - '0');
                ++i;
            }
            auto node = std::make_unique<ExprNode>();
            node->op = ExprNode::Op::Const;
            node->value = v;
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(peek()))) {
            std::string name;
            while (!done() && (std::isalnum(static_cast<unsigned char>(peek())))) {
                name.push_back(peek());
                ++i;
            }
            auto node = std::make_unique<ExprNode>();
            node->op = ExprNode::Op::Var;
            node->var = name;
            return node;
        }
        throw ParseError(std::string("unexpected character '") + peek() + "' in expression");
    }
};

Integer eval_expr(const ExprNode& e, const std::map<std::string, Integer>& vars) {
    switch (e.op) {
        case ExprNode::Op::Const: return e.value;
        case ExprNode::Op::Var: {
            auto it = vars.find(e.var);
            if (it == vars.end()) throw DataError("unknown variable '" + e.var + "' in order expression");
            return it->second;
        }
        case ExprNode::Op::Add: return eval_expr(*e.lhs, vars) + eval_expr(*e.rhs, vars);
        case ExprNode::Op::Sub: return eval_expr(*e.lhs, vars) - eval_expr(*e.rhs, vars);
        case ExprNode::Op::Mul: return eval_expr(*e.lhs, vars) * eval_expr(*e.rhs, vars);
        case ExprNode::Op::Neg: return -eval_expr(*e.lhs, vars);
        case ExprNode::Op::Pow: {
            Integer b = eval_expr(*e.lhs, vars);
            Integer x = eval_expr(*e.rhs, vars);
            if (x < 0 || x > 64) throw DataError("exponent out of range in order expression");
            return ipow(b, static_cast<long>(x));
        }
    }
    throw DataError("unreachable");
}

struct Condition {
    std::string lhs;
    std::string op;
    std::string rhs;

    bool eval(const std::map<std::string, Integer>& vars) const {
        auto resolve = [&](const std::string& t) -> Integer {
            auto it = vars.find(t);
            if (it != vars.end()) return it->second;
            try {
                return Integer(t);
            } catch (...) {
                throw DataError("unknown term '" + t + "' in condition");
            }
        };
        if (lhs == "nodd") return vars.at("n") % 2 == 1;
        Integer a = resolve(lhs);
        Integer b = resolve(rhs);
        if (op == "=") return a == b;
        if (op == "!=") return a != b;
        if (op == ">=") return a >= b;
        if (op == "<=") return a <= b;
        if (op == ">") return a > b;
        if (op == "<") return a < b;
        throw DataError("unknown operator '" + op + "' in condition");
    }
};

Condition parse_condition(const std::string& text, long lineno) {
    if (text == "nodd") return {"nodd", "", ""};
    static const char* ops[] = {"!=", ">=", "<=", ">", "<", "="};
    for (const char* op : ops) {
        auto pos = text.find(op);
        if (pos != std::string::npos)
            return {text.substr(0, pos), op, text.substr(pos + std::string(op).size())};
    }
    throw ParseError("cannot parse condition '" + text + "'", lineno);
}

struct RawCandidate {
    std::string name;
    ExprPtr order;
    std::vector<Condition> conditions;
    std::string cond_text;
    Integer center = 1;
    bool subfield = false;
};

std::vector<RawCandidate> load_candidates(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open candidate file: " + path);
    std::vector<RawCandidate> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto pos = line.find('#');
        if (pos != std::string::npos) line = line.substr(0, pos);
        std::istringstream is(line);
        std::vector<std::string> toks;
        std::string tok;
        while (is >> tok) toks.push_back(tok);
        if (toks.empty()) continue;
        if (toks[0] != "candidate" || toks.size() < 4 || toks[2] != "order")
            throw ParseError("malformed candidate line in " + path, lineno);
        RawCandidate c;
        c.name = toks[1];
        ExprParser p{toks[3]};
        c.order = p.parse();
        size_t i = 4;
        while (i < toks.size()) {
            if (toks[i] == "require" && i + 1 < toks.size()) {
                c.cond_text = toks[i + 1];
                std::string piece;
                std::istringstream cs(toks[i + 1]);
                while (std::getline(cs, piece, ','))
                    c.conditions.push_back(parse_condition(piece, lineno));
                i += 2;
            } else if (toks[i] == "center" && i + 1 < toks.size()) {
                c.center = Integer(toks[i + 1]);
                i += 2;
            } else if (toks[i] == "subfield") {
                c.subfield = true;
                ++i;
            } else {
                throw ParseError("unknown candidate attribute '" + toks[i] + "'", lineno);
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

Integer exact_sqrt_times(long mult, long q) {
    // integer square root of mult*q, required exact (2q for Sz, 3q for Ree)
    Integer target = Integer(mult) * q;
    Integer r = boost::multiprecision::sqrt(target);
    if (r * r != target)
        throw DomainError("sqrt(" + target.str() + ") is not an integer for this family");
    return r;
}

std::string substitute(const std::string& name, const std::string& var, const std::string& value) {
    std::string out = name;
    auto pos = out.find(var);
    if (pos != std::string::npos) out.replace(pos, var.size(), value);
    return out;
}

}  // namespace

std::string candidate_file(Family fam, long q) {
    if (fam == Family::Sz) return "sz_maximals.dat";
    if (fam == Family::Ree) return "ree_maximals.dat";
    PrimePower pp = prime_power(q);
    if (pp.p == 2) return "g2_maximals_p2.dat";
    if (pp.p == 3) return "g2_maximals_p3.dat";
    return "g2_maximals_p5.dat";
}

std::vector<SubgroupCandidate> maximal_subgroup_orders(Family fam, long q,
                                                       const std::string& data_dir) {
    PrimePower pp = check_admissible(fam, q);
    std::string path = data_dir + "/" + candidate_file(fam, q);
    std::vector<RawCandidate> raw = load_candidates(path);

    std::map<std::string, Integer> vars;
    vars["q"] = q;
    vars["p"] = pp.p;
    vars["n"] = pp.n;
    if (fam == Family::Sz) vars["r2q"] = exact_sqrt_times(2, q);
    if (fam == Family::Ree) vars["r3q"] = exact_sqrt_times(3, q);

    std::vector<SubgroupCandidate> out;
    for (const auto& c : raw) {
        if (c.subfield) {
            // one instance per prime alpha dividing n, q0 = p^(n/alpha)
            for (long alpha = 2; alpha <= pp.n; ++alpha) {
                if (!is_prime(alpha) || pp.n % alpha != 0) continue;
                long q0 = 1;
                for (long i = 0; i < pp.n / alpha; ++i) q0 *= pp.p;
                auto v = vars;
                v["q0"] = q0;
                bool ok = true;
                for (const auto& cond : c.conditions)
                    if (!cond.eval(v)) ok = false;
                if (!ok) continue;
                SubgroupCandidate sc;
                sc.name = substitute(c.name, "q0", std::to_string(q0));
                sc.order = eval_expr(*c.order, v);
                sc.center_order = c.center;
                sc.conditions = c.cond_text;
                if (sc.order < 1) throw DataError("candidate " + sc.name + " has nonpositive order");
                out.push_back(std::move(sc));
            }
        } else {
            bool ok = true;
            for (const auto& cond : c.conditions)
                if (!cond.eval(vars)) ok = false;
            if (!ok) continue;
            SubgroupCandidate sc;
            sc.name = c.name;
            sc.order = eval_expr(*c.order, vars);
            sc.center_order = c.center;
            sc.conditions = c.cond_text;
            if (sc.order < 1) throw DataError("candidate " + sc.name + " has nonpositive order");
            out.push_back(std::move(sc));
        }
    }
    return out;
}

ScreenResult screen(Family fam, long q, const EllClass& ell, const std::string& data_dir) {
    check_admissible(fam, q);
    ScreenResult res;
    res.data_file = candidate_file(fam, q);
    Integer Q = q;
    long multiplier = 1;  // compares multiplier*|M| >= bound
    switch (fam) {
        case Family::G2: {
            Integer dd = d1(q, ell);
            res.bound = dd * dd;
            res.bound_desc = "|M| >= d1(q,l)^2 = " + res.bound.str();
            break;
        }
        case Family::Sz:
            res.bound = Q * (Q - 1) * (Q - 1);
            multiplier = 2;
            res.bound_desc = "|M| >= q(q-1)^2/2 = " + Integer(res.bound / 2).str();
            break;
        case Family::Ree:
            res.bound = Q * Q * (Q - 1) * (Q - 1);
            res.bound_desc = "|M| >= q^2(q-1)^2 = " + res.bound.str();
            break;
    }
    for (auto& cand : maximal_subgroup_orders(fam, q, data_dir)) {
        bool kept = cand.order * multiplier >= res.bound;
        res.entries.push_back({cand, kept});
        if (kept) res.survivors.push_back(cand);
    }
    return res;
}

}  // namespace charres

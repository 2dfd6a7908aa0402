#include "exactnum.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

namespace charres {

namespace {

std::atomic<long> g_conductor_cap{120};

// x^n - 1 divided by the cyclotomic polynomials of the proper divisors of n.
// Monic with integer coefficients; index = degree.
const std::vector<Integer>& cyclotomic_polynomial(long n) {
    static std::map<long, std::vector<Integer>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // f = x^n - 1
    std::vector<Integer> f(static_cast<size_t>(n) + 1, Integer(0));
    f[0] = -1;
    f[static_cast<size_t>(n)] = 1;

    std::function<const std::vector<Integer>&(long)> get = [&](long m) -> const std::vector<Integer>& {
        auto jt = cache.find(m);
        if (jt != cache.end()) return jt->second;
        std::vector<Integer> g(static_cast<size_t>(m) + 1, Integer(0));
        g[0] = -1;
        g[static_cast<size_t>(m)] = 1;
        for (long d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            const std::vector<Integer>& phi_d = get(d);
            // exact division g /= phi_d (both monic)
            std::vector<Integer> q(g.size() - phi_d.size() + 1, Integer(0));
            std::vector<Integer> r = g;
            for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
                Integer c = r[static_cast<size_t>(i) + phi_d.size() - 1];
                q[static_cast<size_t>(i)] = c;
                if (c == 0) continue;
                for (size_t j = 0; j < phi_d.size(); ++j)
                    r[static_cast<size_t>(i) + j] -= c * phi_d[j];
            }
            g = std::move(q);
        }
        return cache.emplace(m, std::move(g)).first->second;
    };
    return get(n);
}

std::map<long, Rational> sparsify(const std::vector<Rational>& dense) {
    std::map<long, Rational> out;
    for (size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0) out.emplace(static_cast<long>(i), dense[i]);
    return out;
}

// x^k mod Phi_n for deg <= k < n, built once per conductor.  The rows stay
// small: the recurrence roots are the primitive n-th roots of unity, all
// simple and of modulus one.
const std::vector<std::vector<Integer>>& power_rows(long n) {
    static std::map<long, std::vector<std::vector<Integer>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const std::vector<Integer>& phi = cyclotomic_polynomial(n);
    long deg = static_cast<long>(phi.size()) - 1;
    std::vector<std::vector<Integer>> rows;
    rows.reserve(static_cast<size_t>(n - deg));
    std::vector<Integer> base(static_cast<size_t>(deg));
    for (long j = 0; j < deg; ++j) base[static_cast<size_t>(j)] = -phi[static_cast<size_t>(j)];
    rows.push_back(base);
    for (long k = deg + 1; k < n; ++k) {
        const std::vector<Integer>& prev = rows.back();
        std::vector<Integer> next(static_cast<size_t>(deg));
        const Integer& carry = prev[static_cast<size_t>(deg - 1)];
        next[0] = carry * base[0];
        for (long j = 1; j < deg; ++j)
            next[static_cast<size_t>(j)] =
                prev[static_cast<size_t>(j - 1)] + carry * base[static_cast<size_t>(j)];
        rows.push_back(std::move(next));
    }
    return cache.emplace(n, std::move(rows)).first->second;
}

// Exponents folded mod n, then reduced modulo the n-th cyclotomic polynomial.
std::map<long, Rational> reduce_mod_phi(long n, const std::map<long, Rational>& raw) {
    if (n == 1) {
        Rational total = 0;
        for (const auto& [e, c] : raw) total += c;
        std::map<long, Rational> out;
        if (total != 0) out.emplace(0, total);
        return out;
    }
    long deg = euler_phi(n);
    std::vector<Rational> dense(static_cast<size_t>(deg), Rational(0));
    const std::vector<std::vector<Integer>>* rows = nullptr;
    for (const auto& [e, c] : raw) {
        if (c == 0) continue;
        long k = e % n;
        if (k < 0) k += n;
        if (k < deg) {
            dense[static_cast<size_t>(k)] += c;
            continue;
        }
        if (rows == nullptr) rows = &power_rows(n);
        const std::vector<Integer>& row = (*rows)[static_cast<size_t>(k - deg)];
        for (long j = 0; j < deg; ++j)
            if (row[static_cast<size_t>(j)] != 0)
                dense[static_cast<size_t>(j)] += c * Rational(row[static_cast<size_t>(j)]);
    }
    return sparsify(dense);
}

// Solve B c = x over Q; B is rows x cols, columns independent. Returns false
// when the system is inconsistent.
bool solve_exact(std::vector<std::vector<Rational>> B, std::vector<Rational> x,
                 std::vector<Rational>& out) {
    size_t rows = B.size();
    size_t cols = rows == 0 ? 0 : B[0].size();
    std::vector<size_t> pivot_row(cols, SIZE_MAX);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = SIZE_MAX;
        for (size_t i = r; i < rows; ++i)
            if (B[i][c] != 0) { pr = i; break; }
        if (pr == SIZE_MAX) continue;
        std::swap(B[pr], B[r]);
        std::swap(x[pr], x[r]);
        Rational inv = B[r][c];
        for (size_t j = c; j < cols; ++j) B[r][j] /= inv;
        x[r] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || B[i][c] == 0) continue;
            Rational f = B[i][c];
            for (size_t j = c; j < cols; ++j) B[i][j] -= f * B[r][j];
            x[i] -= f * x[r];
        }
        pivot_row[c] = r;
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (x[i] != 0) return false;
    out.assign(cols, Rational(0));
    for (size_t c = 0; c < cols; ++c) {
        if (pivot_row[c] == SIZE_MAX) return false;  // dependent column; not expected
        out[c] = x[pivot_row[c]];
    }
    return true;
}

std::vector<long> prime_factors_of(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long euler_phi(long n) {
    long result = n;
    for (long p : prime_factors_of(n)) result = result / p * (p - 1);
    return result;
}

long conductor_cap() { return g_conductor_cap.load(); }
void set_conductor_cap(long cap) {
    if (cap < 1) throw DomainError("conductor cap must be positive");
    g_conductor_cap.store(cap);
}

bool rational_is_integer(const Rational& r) { return denominator(r) == 1; }

Cyclotomic::Cyclotomic(long v) : Cyclotomic(Rational(v)) {}
Cyclotomic::Cyclotomic(const Integer& v) : Cyclotomic(Rational(v)) {}
Cyclotomic::Cyclotomic(const Rational& v) {
    if (v != 0) c_.emplace(0, v);
}

Cyclotomic Cyclotomic::make(long n, std::map<long, Rational> raw) {
    Cyclotomic x;
    x.n_ = n;
    x.c_ = std::move(raw);
    x.canonicalize();
    return x;
}

Cyclotomic Cyclotomic::root(long n, long k) {
    if (n < 1) throw DomainError("root of unity order must be positive");
    if (n > conductor_cap())
        throw DomainError("conductor " + std::to_string(n) + " exceeds cap " +
                          std::to_string(conductor_cap()));
    std::map<long, Rational> raw;
    long e = k % n;
    if (e < 0) e += n;
    raw.emplace(e, Rational(1));
    return make(n, std::move(raw));
}

bool Cyclotomic::is_integer() const {
    return n_ == 1 && (c_.empty() || rational_is_integer(c_.begin()->second));
}

Rational Cyclotomic::to_rational() const {
    if (n_ != 1) throw NotRational("value is not rational: " + str());
    return c_.empty() ? Rational(0) : c_.begin()->second;
}

bool Cyclotomic::is_real() const { return *this == conjugate(); }

std::map<long, Rational> Cyclotomic::galois_raw(long k) const {
    std::map<long, Rational> raw;
    for (const auto& [e, c] : c_) {
        long f = static_cast<long>((static_cast<long long>(e) * k) % n_);
        raw[f] += c;
    }
    return reduce_mod_phi(n_, raw);
}

Cyclotomic Cyclotomic::galois(long k) const {
    long km = k % n_;
    if (km < 0) km += n_;
    if (n_ > 1 && gcd_long(km, n_) != 1)
        throw DomainError("galois exponent " + std::to_string(k) +
                          " is not coprime to conductor " + std::to_string(n_));
    Cyclotomic out;
    out.n_ = n_;
    out.c_ = galois_raw(km == 0 ? 1 : km);
    // an automorphism preserves the (minimal) conductor
    return out;
}

Cyclotomic Cyclotomic::conjugate() const { return galois(n_ - 1 == 0 ? 1 : n_ - 1); }

Cyclotomic Cyclotomic::norm_squared() const { return (*this) * conjugate(); }

void Cyclotomic::fold_half() {
    // n = 2m with m odd: zeta_n = -zeta_m^((m+1)/2)
    long m = n_ / 2;
    std::map<long, Rational> raw;
    for (const auto& [e, c] : c_) {
        long f = static_cast<long>((static_cast<long long>(e) * ((m + 1) / 2)) % m);
        if (e % 2 == 0)
            raw[f] += c;
        else
            raw[f] -= c;
    }
    n_ = m;
    c_ = reduce_mod_phi(m, raw);
}

bool Cyclotomic::try_descend(long m) {
    // test invariance under Gal(Q(zeta_n)/Q(zeta_m)) = {k ≡ 1 mod m}
    for (long k = 1 + m; k < n_; k += m) {
        if (gcd_long(k, n_) != 1) continue;
        if (galois_raw(k) != c_) return false;
    }
    if (m == 1) {
        // in the power basis a rational has only the exponent-0 coefficient
        Rational v = 0;
        auto it = c_.find(0);
        if (it != c_.end()) v = it->second;
        c_.clear();
        if (v != 0) c_.emplace(0, v);
        n_ = 1;
        return true;
    }
    long step = n_ / m;
    long phin = euler_phi(n_);
    long phim = euler_phi(m);
    std::vector<std::vector<Rational>> B(static_cast<size_t>(phin),
                                         std::vector<Rational>(static_cast<size_t>(phim), Rational(0)));
    for (long i = 0; i < phim; ++i) {
        std::map<long, Rational> col = reduce_mod_phi(n_, {{(step * i) % n_, Rational(1)}});
        for (const auto& [e, c] : col) B[static_cast<size_t>(e)][static_cast<size_t>(i)] = c;
    }
    std::vector<Rational> x(static_cast<size_t>(phin), Rational(0));
    for (const auto& [e, c] : c_) x[static_cast<size_t>(e)] = c;
    std::vector<Rational> sol;
    if (!solve_exact(std::move(B), std::move(x), sol)) return false;
    std::map<long, Rational> nc;
    for (long i = 0; i < phim; ++i)
        if (sol[static_cast<size_t>(i)] != 0) nc.emplace(i, sol[static_cast<size_t>(i)]);
    n_ = m;
    c_ = std::move(nc);
    return true;
}

void Cyclotomic::canonicalize() {
    c_ = reduce_mod_phi(n_, c_);
    if (c_.empty()) {
        n_ = 1;
        return;
    }
    for (;;) {
        if (n_ % 4 == 2) {
            fold_half();
            continue;
        }
        if (n_ == 1) break;
        bool descended = false;
        for (long p : prime_factors_of(n_)) {
            if (try_descend(n_ / p)) {
                descended = true;
                break;
            }
        }
        if (!descended) break;
    }
    if (c_.empty()) n_ = 1;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& [e, c] : out.c_) c = -c;
    return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    long L = lcm_long(a.n_, b.n_);
    if (L > conductor_cap())
        throw DomainError("conductor " + std::to_string(L) + " exceeds cap " +
                          std::to_string(conductor_cap()));
    std::map<long, Rational> raw;
    for (const auto& [e, c] : a.c_) raw[e * (L / a.n_)] += c;
    for (const auto& [e, c] : b.c_) raw[e * (L / b.n_)] += c;
    return Cyclotomic::make(L, std::move(raw));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    long L = lcm_long(a.n_, b.n_);
    if (L > conductor_cap())
        throw DomainError("conductor " + std::to_string(L) + " exceeds cap " +
                          std::to_string(conductor_cap()));
    std::map<long, Rational> raw;
    for (const auto& [ea, ca] : a.c_)
        for (const auto& [eb, cb] : b.c_) {
            long e = (ea * (L / a.n_) + eb * (L / b.n_)) % L;
            raw[e] += ca * cb;
        }
    return Cyclotomic::make(L, std::move(raw));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) { return *this = *this + o; }
Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this = *this - o; }
Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace

std::string Cyclotomic::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        Rational a = c;
        bool neg = a < 0;
        if (neg) a = -a;
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? '-' : '+');
        }
        first = false;
        if (e == 0) {
            os << rational_str(a);
        } else {
            if (a != 1) os << rational_str(a) << '*';
            os << 'z' << n_;
            if (e != 1) os << '^' << e;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& x) { return os << x.str(); }

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;
    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
    void next() { ++i; }
};

Integer parse_uint(Cursor& cur) {
    if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek())))
        throw ParseError("expected digit in cyclotomic value");
    Integer v = 0;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        v = v * 10 + (cur.peek() - '0');
        cur.next();
    }
    return v;
}

}  // namespace

Cyclotomic Cyclotomic::parse(std::string_view text) {
    Cursor cur{text};
    if (cur.done()) throw ParseError("empty cyclotomic value");
    Cyclotomic total;
    bool expect_term = true;
    int sign = 1;
    if (cur.peek() == '+' || cur.peek() == '-') {
        sign = cur.peek() == '-' ? -1 : 1;
        cur.next();
    }
    while (!cur.done() || expect_term) {
        if (expect_term) {
            if (cur.done()) throw ParseError("dangling sign in cyclotomic value");
            Rational coeff = 1;
            bool saw_number = false;
            if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
                Integer num = parse_uint(cur);
                Integer den = 1;
                if (!cur.done() && cur.peek() == '/') {
                    cur.next();
                    den = parse_uint(cur);
                    if (den == 0) throw ParseError("zero denominator");
                }
                coeff = Rational(num, den);
                saw_number = true;
            }
            bool has_root = false;
            if (!cur.done() && (cur.peek() == '*' || cur.peek() == 'z')) {
                if (cur.peek() == '*') {
                    if (!saw_number) throw ParseError("'*' without coefficient");
                    cur.next();
                    if (cur.done() || cur.peek() != 'z') throw ParseError("expected root of unity after '*'");
                }
                cur.next();  // consume 'z'
                Integer n = parse_uint(cur);
                Integer k = 1;
                if (!cur.done() && cur.peek() == '^') {
                    cur.next();
                    k = parse_uint(cur);
                }
                if (n < 1 || n > conductor_cap())
                    throw ParseError("conductor out of range in cyclotomic value");
                total += Cyclotomic(Rational(sign) * coeff) *
                         Cyclotomic::root(static_cast<long>(n), static_cast<long>(k % n));
                has_root = true;
            }
            if (!has_root) {
                if (!saw_number) throw ParseError("expected term in cyclotomic value");
                total += Cyclotomic(Rational(sign) * coeff);
            }
            expect_term = false;
            sign = 1;
        } else {
            char ch = cur.peek();
            if (ch == '+') {
                sign = 1;
            } else if (ch == '-') {
                sign = -1;
            } else {
                throw ParseError(std::string("unexpected character '") + ch + "' in cyclotomic value");
            }
            cur.next();
            expect_term = true;
        }
    }
    return total;
}

}  // namespace charres

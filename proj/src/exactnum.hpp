#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace charres {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg, long line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg) {}
};
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NotRational : std::runtime_error {
    explicit NotRational(const std::string& msg) : std::runtime_error(msg) {}
};
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Largest conductor the arithmetic will produce (results of +,* live in
/// Q(zeta_lcm)). Default 120; raise it before working with larger fields.
long conductor_cap();
void set_conductor_cap(long cap);

bool rational_is_integer(const Rational& r);

/**
 * An exact element of a cyclotomic field Q(zeta_n).
 *
 * Representation: rational coefficients on the power basis
 * {zeta_n^0, ..., zeta_n^(phi(n)-1)}, reduced modulo the n-th cyclotomic
 * polynomial, with n minimal (never n ≡ 2 mod 4, never a non-minimal
 * conductor).  Equality is therefore coefficient-wise.  Values are immutable
 * once constructed and safe to share across threads.
 *
 * Text grammar (parse and str() agree, str() is canonical):
 *   element := term (('+'|'-') term)*          no whitespace
 *   term    := rational | [rational '*'] 'z' n ['^' k]
 *   e.g.  "-1/2+3*z5^2",  "z3",  "7".
 */
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long v);
    Cyclotomic(const Integer& v);
    Cyclotomic(const Rational& v);

    /// zeta_n^k
    static Cyclotomic root(long n, long k = 1);
    static Cyclotomic parse(std::string_view text);

    long conductor() const { return n_; }
    const std::map<long, Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return n_ == 1; }
    /// true when the value is a rational integer
    bool is_integer() const;
    bool is_real() const;
    /// throws NotRational unless the value lies in Q
    Rational to_rational() const;

    /// complex conjugation, zeta_n -> zeta_n^(-1)
    Cyclotomic conjugate() const;
    /// Galois automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1
    Cyclotomic galois(long k) const;
    /// x * conj(x); real by construction, rational for the data in this
    /// project but not in general
    Cyclotomic norm_squared() const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);

    bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& x);

private:
    long n_ = 1;                    // conductor
    std::map<long, Rational> c_;    // exponent -> nonzero coefficient

    static Cyclotomic make(long n, std::map<long, Rational> raw);
    std::map<long, Rational> galois_raw(long k) const;
    void canonicalize();
    void fold_half();
    bool try_descend(long m);
};

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

}  // namespace charres

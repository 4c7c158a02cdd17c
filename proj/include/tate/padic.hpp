#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tate {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when a formula is evaluated at one of its singular points
/// (v(0), h at the base point, H on the diagonal, the pole of the zeta function).
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

bool is_prime(std::int64_t n);

/// The prime p and the Tate period valuation m (q = p^m).
class PrimeParams {
public:
    PrimeParams(std::int64_t p, int m);

    std::int64_t p() const { return p_; }
    int m() const { return m_; }
    const Integer& q() const { return q_; }

    friend bool operator==(const PrimeParams& a, const PrimeParams& b) {
        return a.p_ == b.p_ && a.m_ == b.m_;
    }

private:
    std::int64_t p_;
    int m_;
    Integer q_;
};

Integer ipow(const Integer& base, unsigned long e);
Integer ipow(std::int64_t base, unsigned long e);
/// Reduced num/den.
Rational frac(long num, long den);
/// p^e for any integer e, as an exact rational.
Rational rpow(std::int64_t p, long e);

/// p-adic valuation of a nonzero rational. Throws SingularityError on zero.
long valuation(const Rational& x, std::int64_t p);
/// p-adic norm p^(-v(x)).
Rational norm(const Rational& x, std::int64_t p);

/// Residue of a p-adic unit a/b modulo `modulus` (a power of p), in [0, modulus).
Integer unit_residue(const Rational& u, std::int64_t p, const Integer& modulus);

/// An element of Q regarded inside Q_p.
class PAdicRational {
public:
    PAdicRational(Rational value, std::int64_t p);

    const Rational& value() const { return value_; }
    std::int64_t p() const { return p_; }
    bool is_zero() const { return sgn(value_) == 0; }
    long valuation() const { return tate::valuation(value_, p_); }
    Rational norm() const { return tate::norm(value_, p_); }

    friend bool operator==(const PAdicRational& a, const PAdicRational& b) {
        return a.p_ == b.p_ && a.value_ == b.value_;
    }

private:
    Rational value_;
    std::int64_t p_;
};

/// A point of the fundamental domain E = union_{i<m} p^i Z_p^x of Q_p^*/q^Z.
/// Holds the unique exact rational representative with 0 <= v(rep) < m.
class TatePoint {
public:
    /// Reduces `x` into E. Throws SingularityError when x = 0.
    TatePoint(const Rational& x, const PrimeParams& ctx);

    const Rational& rep() const { return rep_; }
    long v() const { return v_; }
    const PrimeParams& ctx() const { return ctx_; }
    /// rep / p^v, a p-adic unit.
    Rational unit() const;

    friend bool operator==(const TatePoint& a, const TatePoint& b) {
        return a.ctx_ == b.ctx_ && a.rep_ == b.rep_;
    }

private:
    Rational rep_;
    long v_;
    PrimeParams ctx_;
};

TatePoint reduce_to_E(const Rational& x, const PrimeParams& ctx);
TatePoint tate_mul(const TatePoint& x, const TatePoint& y);
TatePoint tate_inv(const TatePoint& x);
TatePoint tate_div(const TatePoint& x, const TatePoint& y);

/// Parses "a/b" or "a" (base 10), returning the reduced rational.
Rational parse_rational(std::string_view text);
/// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& x);

}  // namespace tate

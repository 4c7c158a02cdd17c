#include "tate/padic.hpp"

#include <cctype>
#include <limits>

namespace tate {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimeParams::PrimeParams(std::int64_t p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    q_ = ipow(p, static_cast<unsigned long>(m));
}

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer ipow(std::int64_t base, unsigned long e) { return ipow(Integer(static_cast<long>(base)), e); }

Rational frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r{Integer(num), Integer(den)};
    r.canonicalize();
    return r;
}

Rational rpow(std::int64_t p, long e) {
    if (e >= 0) return Rational(ipow(p, static_cast<unsigned long>(e)));
    return Rational(Integer(1), ipow(p, static_cast<unsigned long>(-e)));
}

namespace {

long remove_factor(const Integer& n, std::int64_t p) {
    Integer rest;
    Integer pz(static_cast<long>(p));
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

long valuation(const Rational& x, std::int64_t p) {
    if (sgn(x) == 0) throw SingularityError("valuation of zero undefined");
    return remove_factor(x.get_num(), p) - remove_factor(x.get_den(), p);
}

Rational norm(const Rational& x, std::int64_t p) {
    if (sgn(x) == 0) throw SingularityError("norm of zero not supported");
    return rpow(p, -valuation(x, p));
}

Integer unit_residue(const Rational& u, std::int64_t p, const Integer& modulus) {
    if (modulus == 1) return 0;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw std::invalid_argument("denominator not invertible mod p^n");
    }
    Integer r = (u.get_num() * inv) % modulus;
    if (r < 0) r += modulus;
    if (r % static_cast<long>(p) == 0) throw std::invalid_argument("not a p-adic unit");
    return r;
}

PAdicRational::PAdicRational(Rational value, std::int64_t p) : value_(std::move(value)), p_(p) {
    value_.canonicalize();
}

TatePoint::TatePoint(const Rational& x, const PrimeParams& ctx) : ctx_(ctx) {
    const long v = valuation(x, ctx.p());
    const long m = ctx.m();
    // floor division so that v - k*m lands in [0, m)
    long k = v / m;
    if (v % m != 0 && v < 0) --k;
    rep_ = x * rpow(ctx.p(), -k * m);
    v_ = v - k * m;
}

Rational TatePoint::unit() const { return rep_ * rpow(ctx_.p(), -v_); }

TatePoint reduce_to_E(const Rational& x, const PrimeParams& ctx) { return TatePoint(x, ctx); }

TatePoint tate_mul(const TatePoint& x, const TatePoint& y) {
    if (!(x.ctx() == y.ctx())) throw std::invalid_argument("points from different Tate curves");
    return TatePoint(x.rep() * y.rep(), x.ctx());
}

TatePoint tate_inv(const TatePoint& x) { return TatePoint(1 / x.rep(), x.ctx()); }

TatePoint tate_div(const TatePoint& x, const TatePoint& y) { return tate_mul(x, tate_inv(y)); }

Rational parse_rational(std::string_view text) {
    auto digits = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        }
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    const Integer dz{std::string(den)};
    if (dz == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(Integer(n), dz);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return c.get_str();
}

}  // namespace tate

#include "tate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tate/kernel.hpp"

namespace tate {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t mod) {
    std::int64_t r = 1 % mod;
    b %= mod;
    while (e > 0) {
        if (e & 1) r = r * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t checked_modulus(std::int64_t p, int n) {
    if (n < 0) throw std::invalid_argument("character level must be >= 0");
    std::int64_t mod = 1;
    for (int i = 0; i < n; ++i) {
        mod *= p;
        if (mod > UnitGroup::max_modulus) {
            throw std::out_of_range("p^n exceeds the discrete-log table cap of 10^6");
        }
    }
    return mod;
}

}  // namespace

UnitGroup::UnitGroup(std::int64_t p, int n) : p_(p), n_(n), modulus_(checked_modulus(p, n)) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    order_ = n == 0 ? 1 : modulus_ / p * (p - 1);
    log_.assign(static_cast<std::size_t>(modulus_), -1);
    sign_.assign(static_cast<std::size_t>(modulus_), 0);
    if (n == 0) {
        log_[0] = 0;
        return;
    }
    if (p == 2) {
        generator_ = 3;
        if (n == 1) {
            log_[1] = 0;
            return;
        }
        // (Z/2^n)^x = {+-1} x <3>, with <3> of order 2^(n-2)
        const std::int64_t cyclic = order_ / 2;
        std::int64_t x = 1;
        for (std::int64_t b = 0; b < cyclic; ++b) {
            log_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(b);
            const auto neg = static_cast<std::size_t>(modulus_ - x);
            log_[neg] = static_cast<std::int32_t>(b);
            sign_[neg] = 1;
            x = x * 3 % modulus_;
        }
        return;
    }
    const auto factors = prime_factors(order_);
    for (std::int64_t g = 2; g < modulus_; ++g) {
        if (g % p == 0) continue;
        const bool primitive = std::all_of(factors.begin(), factors.end(),
                                           [&](std::int64_t r) { return powmod(g, order_ / r, modulus_) != 1; });
        if (primitive) {
            generator_ = g;
            break;
        }
    }
    if (order_ == 1) generator_ = 1;
    std::int64_t x = 1;
    for (std::int64_t t = 0; t < order_; ++t) {
        log_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(t);
        x = x * generator_ % modulus_;
    }
}

std::int64_t UnitGroup::log(std::int64_t residue) const {
    if (residue < 0 || residue >= modulus_ || log_[static_cast<std::size_t>(residue)] < 0) {
        throw std::invalid_argument("residue " + std::to_string(residue) + " is not a unit mod p^n");
    }
    return log_[static_cast<std::size_t>(residue)];
}

int UnitGroup::sign_bit(std::int64_t residue) const {
    log(residue);
    return sign_[static_cast<std::size_t>(residue)];
}

std::vector<std::int64_t> UnitGroup::units() const {
    std::vector<std::int64_t> out;
    if (n_ == 0) return {0};
    for (std::int64_t r = 1; r < modulus_; ++r) {
        if (r % p_ != 0) out.push_back(r);
    }
    return out;
}

UnitCharacter::UnitCharacter(std::int64_t p) : p_(p) {}

UnitCharacter::UnitCharacter(std::shared_ptr<const UnitGroup> group, std::int64_t a, int eps)
    : p_(group->p()), group_(std::move(group)), a_(a), eps_(eps) {
    const int n = group_->n();
    if (p_ == 2) {
        const std::int64_t cyclic = n >= 2 ? group_->order() / 2 : 1;
        if (a < 0 || a >= cyclic) throw std::invalid_argument("character index out of range");
        if (eps < 0 || eps > 1 || (n < 2 && eps != 0)) throw std::invalid_argument("sign index out of range");
    } else {
        if (a < 0 || a >= group_->order()) throw std::invalid_argument("character index out of range");
        if (eps != 0) throw std::invalid_argument("sign index only exists for p = 2");
    }
    conductor_ = n;
    for (int j = 0; j <= n; ++j) {
        if (trivial_on(j)) {
            conductor_ = j;
            break;
        }
    }
}

std::int64_t UnitCharacter::phase(std::int64_t residue) const {
    if (!group_ || group_->n() == 0) return 0;
    const std::int64_t phi = group_->order();
    const std::int64_t b = group_->log(residue);
    if (p_ != 2) return a_ * b % phi;
    if (group_->n() == 1) return 0;
    const std::int64_t e = group_->sign_bit(residue);
    return (eps_ * e * (phi / 2) + 2 * a_ * b) % phi;
}

std::complex<double> UnitCharacter::value_at_residue(std::int64_t residue) const {
    const std::int64_t t = phase(residue);
    if (t == 0) return {1.0, 0.0};
    const std::int64_t phi = group_->order();
    if (2 * t == phi) return {-1.0, 0.0};
    return std::polar(1.0, two_pi * static_cast<double>(t) / static_cast<double>(phi));
}

std::int64_t UnitCharacter::residue_of(const Rational& u) const {
    if (valuation(u, p_) != 0) throw std::invalid_argument("character argument must be a p-adic unit");
    if (!group_ || group_->n() == 0) return 0;
    return unit_residue(u, p_, Integer(static_cast<long>(group_->modulus()))).get_si();
}

std::complex<double> UnitCharacter::operator()(const Rational& u) const { return value_at_residue(residue_of(u)); }

bool UnitCharacter::is_real() const {
    if (!group_) return true;
    for (auto r : group_->units()) {
        const std::int64_t t = phase(r);
        if (t != 0 && 2 * t != group_->order()) return false;
    }
    return true;
}

bool UnitCharacter::trivial_on(int j) const {
    const int n = level();
    if (j >= n) return true;
    const std::int64_t mod = group_->modulus();
    std::vector<std::int64_t> gens;
    if (p_ == 2 && j <= 1) {
        if (n >= 2) gens.push_back(mod - 1);
        if (n >= 3) gens.push_back(3);
    } else if (j == 0) {
        gens.push_back(group_->generator());
    } else {
        std::int64_t pj = 1;
        for (int i = 0; i < j; ++i) pj *= p_;
        gens.push_back((1 + pj) % mod);
    }
    return std::all_of(gens.begin(), gens.end(), [&](std::int64_t g) { return phase(g) == 0; });
}

std::complex<double> character_value(const UnitCharacter& chi, const Rational& u) { return chi(u); }

std::vector<UnitCharacter> characters_mod(std::int64_t p, int n) {
    auto group = std::make_shared<const UnitGroup>(p, n);
    std::vector<UnitCharacter> out;
    if (p == 2) {
        const std::int64_t cyclic = n >= 2 ? group->order() / 2 : 1;
        for (int eps = 0; eps <= (n >= 2 ? 1 : 0); ++eps) {
            for (std::int64_t a = 0; a < cyclic; ++a) out.emplace_back(group, a, eps);
        }
    } else {
        for (std::int64_t a = 0; a < group->order(); ++a) out.emplace_back(group, a);
    }
    return out;
}

std::vector<UnitCharacter> primitive_characters(std::int64_t p, int n) {
    auto all = characters_mod(p, n);
    std::erase_if(all, [n](const UnitCharacter& c) { return c.conductor() != n; });
    return all;
}

std::complex<double> AngularCharacter::operator()(long v) const {
    const long e = ((v * l) % m + m) % m;
    if (e == 0) return {1.0, 0.0};
    if (2 * e == m) return {-1.0, 0.0};
    return std::polar(1.0, two_pi * static_cast<double>(e) / static_cast<double>(m));
}

std::complex<double> CharacterLabel::operator()(const TatePoint& z) const {
    return angular(z.v()) * radial(z.unit());
}

std::vector<CharacterLabel> character_labels(const PrimeParams& ctx, int k) {
    std::vector<CharacterLabel> out;
    const auto chars = characters_mod(ctx.p(), k);
    for (int l = 0; l < ctx.m(); ++l) {
        for (const auto& chi : chars) out.push_back({AngularCharacter{ctx.m(), l}, chi});
    }
    return out;
}

Rational eigenvalue_radial_closed(int n, const PrimeParams& ctx) {
    if (n < 1) throw std::invalid_argument("radial eigenvalue needs conductor n >= 1");
    return Rational(ipow(ctx.p(), static_cast<unsigned long>(n - 1)) * static_cast<long>(ctx.p() - 1));
}

std::complex<double> eigenvalue_radial_integral(const UnitCharacter& chi, const AngularCharacter& zeta,
                                                const PrimeParams& ctx) {
    if (chi.conductor() < 1) throw std::invalid_argument("trivial radial character (use eigenvalue_angular)");
    if (zeta.m != ctx.m()) throw std::invalid_argument("angular character modulus must equal m");
    const double p = static_cast<double>(ctx.p());
    const int m = ctx.m();
    const int n = chi.level();
    const double cp = c_p_const(ctx).get_d();
    const double inv_q1 = 1.0 / (std::pow(p, m) - 1.0);
    const double cell = std::pow(p, -n);  // d*z measure of one residue class mod p^n
    const UnitGroup group(ctx.p(), n);

    // unit shell: H(z,1) = p^(2 v(z-1)) + 2/(q-1), constant on each residue class r != 1;
    // on the class of 1 the factor pi(z) - 1 vanishes
    std::complex<double> unit_shell{};
    std::complex<double> char_mass{};
    for (std::int64_t r : group.units()) {
        const std::complex<double> chr = chi.value_at_residue(r);
        char_mass += chr * cell;
        if (r == 1) continue;
        const long j = valuation(Rational(Integer(static_cast<long>(r - 1))), ctx.p());
        unit_shell += (std::pow(p, 2.0 * static_cast<double>(j)) + 2.0 * inv_q1) * (chr - 1.0) * cell;
    }
    // other shells: H(z,1) depends on v_z only
    std::complex<double> outer{};
    const double unit_mass = (p - 1.0) / p;
    for (int v = 1; v < m; ++v) {
        const double h = (std::pow(p, m - v) + std::pow(p, v)) * inv_q1;
        outer += h * (zeta(v) * char_mass - unit_mass);
    }
    return -cp * (unit_shell + outer);
}

std::optional<Rational> eigenvalue_angular_exact(int l, const PrimeParams& ctx) {
    const int m = ctx.m();
    if (l < 0 || l >= m) throw std::invalid_argument("angular index must lie in [0, m)");
    const int order = m / std::gcd(l, m);
    long c;  // 2cos(2 pi l/m)
    switch (order) {
        case 1: c = 2; break;
        case 2: c = -2; break;
        case 3: c = -1; break;
        case 4: c = 0; break;
        case 6: c = 1; break;
        default: return std::nullopt;
    }
    const long p = ctx.p();
    return frac(p * (p - 1) * (2 - c), p * p - p * c + 1);
}

AngularEigenvalue angular_eigenvalue_detail(int l, const PrimeParams& ctx) {
    const int m = ctx.m();
    if (l < 0 || l >= m) throw std::invalid_argument("angular index must lie in [0, m)");
    const double p = static_cast<double>(ctx.p());
    const double c = 2.0 * std::cos(two_pi * l / m);
    AngularEigenvalue out{};
    out.closed_form = l == 0 ? 0.0 : p * (p - 1.0) * (2.0 - c) / (p * p - p * c + 1.0);

    // -c_p sum_{v=1}^{m-1} (p^v + p^(m-v))/(p^m - 1) (omega^v - 1) mu*(Z_p^x),
    // with the weight rescaled by p^-m so large m stays finite
    const AngularCharacter zeta{m, l};
    const double cp = c_p_const(ctx).get_d();
    const double denom = 1.0 - std::pow(p, -m);
    std::complex<double> sum{};
    for (int v = 1; v < m; ++v) {
        const double w = (std::pow(p, v - m) + std::pow(p, -v)) / denom;
        sum += w * (zeta(v) - 1.0);
    }
    sum *= -cp * (p - 1.0) / p;
    if (std::abs(sum.imag()) > 1e-10) throw std::logic_error("angular defining sum is not real");
    out.defining_sum = sum.real();
    out.exact = eigenvalue_angular_exact(l, ctx);
    return out;
}

double eigenvalue_angular(int l, const PrimeParams& ctx) {
    const auto d = angular_eigenvalue_detail(l, ctx);
    if (std::abs(d.closed_form - d.defining_sum) > 1e-10) {
        throw std::logic_error("angular eigenvalue closed form disagrees with its defining sum");
    }
    return d.closed_form;
}

Eigenvalue eigenvalue_of(const CharacterLabel& label, const PrimeParams& ctx) {
    const int n = label.radial.conductor();
    if (n >= 1) {
        Rational lam = eigenvalue_radial_closed(n, ctx);
        return {lam.get_d(), lam};
    }
    return {eigenvalue_angular(label.angular.l, ctx), eigenvalue_angular_exact(label.angular.l, ctx)};
}

const char* to_string(ModeKind kind) {
    switch (kind) {
        case ModeKind::zero: return "zero";
        case ModeKind::angular: return "angular";
        case ModeKind::radial: return "radial";
    }
    return "?";
}

std::int64_t multiplicity(ModeKind kind, int index, const PrimeParams& ctx) {
    const std::int64_t p = ctx.p();
    const std::int64_t m = ctx.m();
    switch (kind) {
        case ModeKind::zero: return 1;
        case ModeKind::angular:
            if (index <= 0 || index >= m) throw std::invalid_argument("angular mode index must lie in [1, m)");
            return 2 * index == m ? 1 : 2;
        case ModeKind::radial: {
            if (index < 1) throw std::invalid_argument("radial mode needs conductor >= 1");
            if (index == 1) return m * (p - 2);
            std::int64_t count = m * (p - 1) * (p - 1);
            for (int i = 2; i < index; ++i) {
                if (count > INT64_MAX / p) throw std::overflow_error("multiplicity overflows 64 bits");
                count *= p;
            }
            return count;
        }
    }
    return 0;
}

std::vector<SpectrumEntry> enumerate_spectrum(int max_conductor, const PrimeParams& ctx) {
    if (max_conductor < 1) throw std::invalid_argument("max conductor must be >= 1");
    std::vector<SpectrumEntry> out;
    out.push_back({ModeKind::zero, 0, {0.0, Rational(0)}, 1});
    for (int l = 1; 2 * l <= ctx.m(); ++l) {
        out.push_back({ModeKind::angular, l, {eigenvalue_angular(l, ctx), eigenvalue_angular_exact(l, ctx)},
                       multiplicity(ModeKind::angular, l, ctx)});
    }
    for (int n = 1; n <= max_conductor; ++n) {
        const std::int64_t mult = multiplicity(ModeKind::radial, n, ctx);
        if (mult == 0) continue;
        Rational lam = eigenvalue_radial_closed(n, ctx);
        out.push_back({ModeKind::radial, n, {lam.get_d(), lam}, mult});
    }
    return out;
}

std::vector<int> empty_radial_strata(int max_conductor, const PrimeParams& ctx) {
    std::vector<int> out;
    for (int n = 1; n <= max_conductor; ++n) {
        if (multiplicity(ModeKind::radial, n, ctx) == 0) out.push_back(n);
    }
    return out;
}

std::int64_t total_multiplicity(const std::vector<SpectrumEntry>& spectrum) {
    std::int64_t total = 0;
    for (const auto& e : spectrum) total += e.multiplicity;
    return total;
}

std::vector<double> expand_spectrum(const std::vector<SpectrumEntry>& spectrum) {
    std::vector<double> out;
    for (const auto& e : spectrum) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.eigenvalue.value);
    std::sort(out.begin(), out.end());
    return out;
}

double spectral_gap(const PrimeParams& ctx) {
    const double smallest_radial = multiplicity(ModeKind::radial, 1, ctx) > 0
                                       ? eigenvalue_radial_closed(1, ctx).get_d()
                                       : eigenvalue_radial_closed(2, ctx).get_d();
    if (ctx.m() == 1) return smallest_radial;
    const double angular = eigenvalue_angular(1, ctx);
    if (!(angular < static_cast<double>(ctx.p() - 1))) {
        throw std::logic_error("smallest angular eigenvalue is not below p - 1");
    }
    return std::min(angular, smallest_radial);
}

WeylCount weyl_count(const Rational& lambda, const PrimeParams& ctx) {
    const std::int64_t p = ctx.p();
    const std::int64_t m = ctx.m();
    if (lambda < Rational(p - 1)) {
        throw std::out_of_range("lambda below p - 1 is outside the Weyl formula's regime");
    }
    int M = 1;
    while (eigenvalue_radial_closed(M + 1, ctx) <= lambda) ++M;

    WeylCount out{};
    out.M = M;
    std::int64_t geometric = 0;  // sum_{i=0}^{M-2} p^i
    std::int64_t pi = 1;
    for (int i = 0; i <= M - 2; ++i) {
        geometric += pi;
        pi *= p;
    }
    out.formula = m * (p - 1) * (p - 1) * geometric + m * (p - 2) + m;
    out.m_lambda_M = m * eigenvalue_radial_closed(M, ctx).get_num().get_si();

    const double lam = lambda.get_d();
    for (const auto& e : enumerate_spectrum(M + 1, ctx)) {
        const bool below = e.eigenvalue.exact ? *e.eigenvalue.exact <= lambda : e.eigenvalue.value <= lam;
        if (below) out.enumerated += e.multiplicity;
    }
    return out;
}

std::vector<DtnRow> dtn_cross_check(const PrimeParams& ctx, int max_n) {
    if (ctx.m() != 1) throw std::invalid_argument("the Dirichlet-to-Neumann comparison needs m = 1");
    const long p = ctx.p();
    const Rational cp = c_p_const(ctx);
    const Rational unit_mass = frac(p - 1, p);
    const Rational correction = Rational(2) / Rational(ctx.q() - 1) * unit_mass;
    std::vector<DtnRow> out;
    for (int n = 1; n <= max_n; ++n) {
        const Rational dtn = Rational(p + 1) * rpow(p, n - 2) - frac(2, p);
        out.push_back({n, cp * (dtn + correction), eigenvalue_radial_closed(n, ctx)});
    }
    return out;
}

}  // namespace tate

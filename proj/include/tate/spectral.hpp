#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tate/padic.hpp"

namespace tate {

/// Discrete-log data for (Z/p^n)^x. For odd p a primitive root g is fixed;
/// for p = 2 and n >= 3 the generators are -1 and 3.
class UnitGroup {
public:
    static constexpr std::int64_t max_modulus = 1'000'000;

    UnitGroup(std::int64_t p, int n);

    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    std::int64_t modulus() const { return modulus_; }
    /// phi(p^n), the order of the group.
    std::int64_t order() const { return order_; }
    /// The fixed primitive root (odd p), or 3 (p = 2).
    std::int64_t generator() const { return generator_; }

    /// Exponent of the generator (odd p), or of 3 (p = 2), for a unit residue.
    std::int64_t log(std::int64_t residue) const;
    /// 1 when the residue is -3^b (p = 2), else 0.
    int sign_bit(std::int64_t residue) const;

    std::vector<std::int64_t> units() const;

private:
    std::int64_t p_;
    int n_;
    std::int64_t modulus_;
    std::int64_t order_;
    std::int64_t generator_ = 1;
    std::vector<std::int32_t> log_;
    std::vector<std::int8_t> sign_;
};

/// A character of Z_p^x factoring through (Z/p^n)^x.
/// Odd p: u = g^t maps to exp(2 pi i a t / phi(p^n)).
/// p = 2: u = (-1)^e 3^b maps to (-1)^(eps e) exp(2 pi i a b / 2^(n-2)).
class UnitCharacter {
public:
    /// The trivial character.
    explicit UnitCharacter(std::int64_t p);
    UnitCharacter(std::shared_ptr<const UnitGroup> group, std::int64_t a, int eps = 0);

    std::int64_t p() const { return p_; }
    /// The level n: the character is read off residues mod p^n.
    int level() const { return group_ ? group_->n() : 0; }
    std::int64_t index() const { return a_; }
    int sign_index() const { return eps_; }
    /// Smallest j with the character trivial on 1 + p^j Z_p, found by evaluation.
    int conductor() const { return conductor_; }

    /// t with chi(u) = exp(2 pi i t / phi(p^n)), t in [0, phi(p^n)).
    std::int64_t phase(std::int64_t residue) const;
    std::complex<double> value_at_residue(std::int64_t residue) const;
    /// Value at a p-adic unit. Throws std::invalid_argument for non-units.
    std::complex<double> operator()(const Rational& u) const;
    /// True when every value is +-1.
    bool is_real() const;
    std::int64_t residue_of(const Rational& u) const;

private:
    bool trivial_on(int j) const;

    std::int64_t p_;
    std::shared_ptr<const UnitGroup> group_;
    std::int64_t a_ = 0;
    int eps_ = 0;
    int conductor_ = 0;
};

std::complex<double> character_value(const UnitCharacter& chi, const Rational& u);

/// Every character of (Z/p^n)^x, in index order.
std::vector<UnitCharacter> characters_mod(std::int64_t p, int n);
/// The characters of conductor exactly n.
std::vector<UnitCharacter> primitive_characters(std::int64_t p, int n);

/// zeta(v) = omega^(v l), omega = exp(2 pi i / m).
struct AngularCharacter {
    int m = 1;
    int l = 0;
    std::complex<double> operator()(long v) const;
    /// omega^l is real (l = 0, or 2l = m).
    bool is_real() const { return l == 0 || 2 * l == m; }
};

/// The eigenfunction pi(z) = zeta(v_z) chi(unit part of z).
struct CharacterLabel {
    AngularCharacter angular;
    UnitCharacter radial;
    std::complex<double> operator()(const TatePoint& z) const;
    bool is_real() const { return angular.is_real() && radial.is_real(); }
};

/// Every label of level k: m * phi(p^k) of them.
std::vector<CharacterLabel> character_labels(const PrimeParams& ctx, int k);

/// An eigenvalue, exact when the algebra permits.
struct Eigenvalue {
    double value = 0;
    std::optional<Rational> exact;
};

/// lambda_n = (p-1) p^(n-1).
Rational eigenvalue_radial_closed(int n, const PrimeParams& ctx);
/// -c_p * integral_E H(z,1)(pi(z) - 1) d*z summed over residue classes mod p^n.
std::complex<double> eigenvalue_radial_integral(const UnitCharacter& chi, const AngularCharacter& zeta,
                                                const PrimeParams& ctx);

struct AngularEigenvalue {
    double closed_form;
    double defining_sum;
    std::optional<Rational> exact;  // when 2cos(2 pi l/m) is rational
};

AngularEigenvalue angular_eigenvalue_detail(int l, const PrimeParams& ctx);
/// p(p-1)(2-c)/(p^2-pc+1), c = 2cos(2 pi l/m); cross-checked against the defining sum.
double eigenvalue_angular(int l, const PrimeParams& ctx);
std::optional<Rational> eigenvalue_angular_exact(int l, const PrimeParams& ctx);
Eigenvalue eigenvalue_of(const CharacterLabel& label, const PrimeParams& ctx);

enum class ModeKind { zero, angular, radial };
const char* to_string(ModeKind kind);

struct SpectrumEntry {
    ModeKind kind;
    int index = 0;  // conductor n (radial) or l (angular)
    Eigenvalue eigenvalue;
    std::int64_t multiplicity = 0;
};

/// Multiplicity of a mode: m(p-2) for n = 1, m(p-1)^2 p^(n-2) for n >= 2,
/// 2 for non-real omega, 1 for omega = -1 and for the zero mode.
std::int64_t multiplicity(ModeKind kind, int index, const PrimeParams& ctx);

/// Zero mode, angular modes l = 1..floor(m/2), radial conductors 1..N.
/// Strata of multiplicity 0 (n = 1 at p = 2) are omitted.
std::vector<SpectrumEntry> enumerate_spectrum(int max_conductor, const PrimeParams& ctx);
/// Radial strata 1..N with no modes.
std::vector<int> empty_radial_strata(int max_conductor, const PrimeParams& ctx);
std::int64_t total_multiplicity(const std::vector<SpectrumEntry>& spectrum);
/// Eigenvalues repeated by multiplicity, ascending.
std::vector<double> expand_spectrum(const std::vector<SpectrumEntry>& spectrum);

/// Smallest nonzero eigenvalue.
double spectral_gap(const PrimeParams& ctx);

struct WeylCount {
    int M;
    std::int64_t formula;
    std::int64_t enumerated;
    std::int64_t m_lambda_M;
    bool holds() const { return formula == enumerated && enumerated == m_lambda_M; }
};

/// Counts eigenvalues <= lambda by the closed formula and by enumeration.
/// Throws std::out_of_range when lambda < p - 1 (the formula's regime).
WeylCount weyl_count(const Rational& lambda, const PrimeParams& ctx);

struct DtnRow {
    int n;
    Rational lhs;  // c_p (lambda'_n + 2/(p^m-1) mu*(Z_p^x))
    Rational rhs;  // (p-1) p^(n-1)
};

/// m = 1 comparison with the Dirichlet-to-Neumann spectrum, n = 1..max_n.
std::vector<DtnRow> dtn_cross_check(const PrimeParams& ctx, int max_n = 6);

}  // namespace tate

#ifndef SEMICONF_MODELS_HPP
#define SEMICONF_MODELS_HPP

#include <cmath>
#include <concepts>
#include <limits>

#include "errors.hpp"
#include "special_fn.hpp"

// Units: hbar = 2 m0 = 1, so the kinetic operator is -d/dx (1/M) d/dx.

namespace semiconf {

inline constexpr double infinite_mass = std::numeric_limits<double>::infinity();

/// Points with x + a below this fraction of a are treated as lying on the wall.
inline constexpr double wall_guard = 1e-14;

/// alpha = sqrt(1 + 4g) / 2, the Laguerre index of the isotonic oscillator.
inline double alpha_from_g(double g)
{
    if (!(g > 0.0))
        throw parameter_error("alpha_from_g: g must be positive");
    return 0.5 * std::sqrt(1.0 + 4.0 * g);
}

/// Constant-mass isotonic oscillator U(u) = omega_bar^2 u^2 / 4 + g / u^2 on u > 0.
class IsotonicModel {
public:
    IsotonicModel(double omega_bar, double g) : omega_bar_(omega_bar), g_(g)
    {
        if (!(omega_bar > 0.0) || !std::isfinite(omega_bar))
            throw parameter_error("IsotonicModel: omega_bar must be positive");
        alpha_ = alpha_from_g(g);
    }

    double omega_bar() const noexcept { return omega_bar_; }
    double g() const noexcept { return g_; }
    double alpha() const noexcept { return alpha_; }

private:
    double omega_bar_;
    double g_;
    double alpha_;
};

inline double isotonic_potential(const IsotonicModel& model, double u)
{
    if (!(u > 0.0))
        throw parameter_error("isotonic_potential: u must be positive");
    const double w = model.omega_bar();
    return 0.25 * w * w * u * u + model.g() / (u * u);
}

inline double isotonic_energy(const IsotonicModel& model, unsigned n)
{
    return model.omega_bar() * (2.0 * n + model.alpha() + 1.0);
}

/** Isotonic eigenfunction normalized to unit L2 norm on (0, infinity):
 *
 *      phi_n(u) = N_n u^{alpha+1/2} exp(-omega_bar u^2 / 4) L_n^{(alpha)}(omega_bar u^2 / 2),
 *      N_n^2    = 2 (omega_bar/2)^{alpha+1} n! / Gamma(n + alpha + 1).
 */
inline double isotonic_wavefunction(const IsotonicModel& model, unsigned n, double u)
{
    if (!(u > 0.0))
        throw parameter_error("isotonic_wavefunction: u must be positive");
    const double w = model.omega_bar();
    const double alpha = model.alpha();
    const double log_norm = 0.5 * (std::log(2.0) + (alpha + 1.0) * std::log(0.5 * w) +
                                   log_gamma(n + 1.0) - log_gamma(n + alpha + 1.0));
    const double z = 0.5 * w * u * u;
    return std::exp(log_norm + (alpha + 0.5) * std::log(u) - 0.5 * z) * laguerre(n, alpha, z);
}

/// (m - 1) / (2 - m): alpha must exceed this for the wall at x = -a to confine.
inline double semiconfinement_bound(double m)
{
    if (!(m > 0.0 && m < 2.0))
        throw parameter_error("semiconfinement_bound: m must lie in (0, 2)");
    return (m - 1.0) / (2.0 - m);
}

/// Exponent p of (1 + x/a)^p in the wavefunction; p > 0 iff alpha > (m-1)/(2-m).
inline double boundary_exponent(double m, double alpha)
{
    return -0.5 * m * (alpha + 1.0) + alpha + 0.5;
}

/** Semiconfined position-dependent-mass oscillator on (-a, infinity) with
 *  M(x) = (1 + x/a)^{-m}. Construction enforces omega, a, alpha > 0,
 *  0 < m < 2 and alpha > (m-1)/(2-m); m = 1 with alpha = a^2 omega is the
 *  harmonic case V = M omega^2 x^2 / 4.
 */
class SemiconfinedModel {
public:
    SemiconfinedModel(double omega, double a, double alpha, double m)
        : omega_(omega), a_(a), alpha_(alpha), m_(m)
    {
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw parameter_error("SemiconfinedModel: omega must be positive");
        if (!(a > 0.0) || !std::isfinite(a))
            throw parameter_error("SemiconfinedModel: a must be positive");
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw parameter_error("SemiconfinedModel: alpha must be positive");
        if (!(alpha > semiconfinement_bound(m)))
            throw parameter_error("SemiconfinedModel: alpha must exceed (m-1)/(2-m) for semiconfinement");
    }

    double omega() const noexcept { return omega_; }
    double a() const noexcept { return a_; }
    double alpha() const noexcept { return alpha_; }
    double m() const noexcept { return m_; }

private:
    double omega_;
    double a_;
    double alpha_;
    double m_;
};

/// (1 + x/a)^{-m} for x > -a, infinite_mass otherwise.
inline double power_law_mass(double a, double m, double x)
{
    if (!(x > -a))
        return infinite_mass;
    return std::exp(-m * std::log1p(x / a));
}

inline double mass(const SemiconfinedModel& model, double x)
{
    return power_law_mass(model.a(), model.m(), x);
}

inline bool on_wall(const SemiconfinedModel& model, double x)
{
    return x + model.a() <= wall_guard * model.a();
}

/** Effective potential
 *
 *      V(x) = a^m w^2 (x+a)^{2-m} / (4 (2-m)^2)
 *           + [(m-2)alpha - (m-1)][(m-2)alpha + m - 1] / (4 a^m (x+a)^{2-m})
 *           - w alpha / 2.
 *
 *  The constant is -w*alpha/2, the energy offset of the transformation. With
 *  -w*a/2 in its place the m = 1 case would not reduce to
 *  a w^2 (x + a - alpha/(a w))^2 / (4 (x+a)) and the minimum would not be
 *  w (sqrt(alpha^2 - ((m-1)/(2-m))^2) - alpha) / 2.
 *
 *  Returns +infinity on the wall guard band. Templated on the real type so a
 *  numeric minimizer can evaluate it in extended precision.
 */
template <class T>
    requires(!std::integral<T>)
T potential(const SemiconfinedModel& model, T x)
{
    using std::exp;
    using std::log1p;
    const T a = model.a();
    if (!(x > -a))
        throw parameter_error("potential: x must exceed -a");
    if (x + a <= T(wall_guard) * a)
        return std::numeric_limits<T>::infinity();

    const T m = model.m(), w = model.omega(), alpha = model.alpha();
    const T two_m = T(2) - m;
    // a^m (x+a)^{2-m} = a^2 (1+x/a)^{2-m}
    const T s = a * a * exp(two_m * log1p(x / a));
    const T barrier = ((m - T(2)) * alpha - (m - T(1))) * ((m - T(2)) * alpha + m - T(1));
    return w * w * s / (T(4) * two_m * two_m) + barrier / (T(4) * s) - T(0.5) * w * alpha;
}

/// Spectrum w (n + 1/2), independent of a, alpha and m.
inline double energy(const SemiconfinedModel& model, unsigned n)
{
    return model.omega() * (n + 0.5);
}

/// ln C_n with C_n = (w a^2/(2-m)^2)^{(alpha+1)/2} sqrt((2-m) n! / (a Gamma(alpha+n+1))).
inline double log_normalization_constant(const SemiconfinedModel& model, unsigned n)
{
    const double a = model.a(), m = model.m(), alpha = model.alpha();
    const double two_m = 2.0 - m;
    return 0.5 * (alpha + 1.0) * std::log(model.omega() * a * a / (two_m * two_m)) +
           0.5 * (std::log(two_m) + log_gamma(n + 1.0) - std::log(a) - log_gamma(alpha + n + 1.0));
}

inline double normalization_constant(const SemiconfinedModel& model, unsigned n)
{
    const double log_c = log_normalization_constant(model, n);
    if (log_c > std::log(std::numeric_limits<double>::max()))
        throw overflow_error("normalization_constant: C_n overflows a double", log_c);
    return std::exp(log_c);
}

/** Normalized eigenfunction psi_n(x). Zero for x <= -a (infinite-mass region)
 *  and on the wall guard band. The prefactor is assembled in log-space so
 *  that C_n never has to be formed on its own.
 */
inline double wavefunction(const SemiconfinedModel& model, unsigned n, double x)
{
    if (!(x > -model.a()) || on_wall(model, x))
        return 0.0;

    const double a = model.a(), m = model.m(), alpha = model.alpha();
    const double two_m = 2.0 - m;
    const double log_y = std::log1p(x / a);
    const double t = model.omega() * a * a * std::exp(two_m * log_y) / (two_m * two_m);
    const double log_envelope =
        log_normalization_constant(model, n) + boundary_exponent(m, alpha) * log_y - 0.5 * t;
    return std::exp(log_envelope) * laguerre(n, alpha, t);
}

struct PotentialMinimum {
    double x_min;
    double v_min;
};

/** Location and depth of the potential minimum:
 *
 *      x_min = -a + {(2-m)^2 / (a^m w) * sqrt(alpha^2 - r^2)}^{1/(2-m)},
 *      v_min = w (sqrt(alpha^2 - r^2) - alpha) / 2,    r = (m-1)/(2-m).
 *
 *  For m < 1 a valid model may still have alpha <= |r|; the barrier term is
 *  then non-positive, the potential has no interior minimum and this throws.
 */
inline PotentialMinimum potential_minimum(const SemiconfinedModel& model)
{
    const double a = model.a(), m = model.m(), w = model.omega(), alpha = model.alpha();
    const double r = semiconfinement_bound(m);
    const double radicand = alpha * alpha - r * r;
    if (!(radicand > 0.0))
        throw parameter_error("potential_minimum: potential has no interior minimum (alpha <= |m-1|/(2-m))");
    const double root = std::sqrt(radicand);
    const double two_m = 2.0 - m;
    const double x_min = -a + std::pow(two_m * two_m / (std::pow(a, m) * w) * root, 1.0 / two_m);
    return {x_min, 0.5 * w * (root - alpha)};
}

} // namespace semiconf

#endif // SEMICONF_MODELS_HPP

#ifndef SEMICONF_PCT_HPP
#define SEMICONF_PCT_HPP

#include <cmath>
#include <string>

#include "errors.hpp"
#include "models.hpp"

/** Point canonical transformation from the isotonic oscillator to the
 *  position-dependent-mass family.
 *
 *  Change of variable u(x) = a_bar v(x) + b_bar with v' = sqrt(M), change of
 *  function phi_n(u(x)) ~ M^{-1/4} psi_n(x), and
 *
 *      V(x) = a_bar^2 U(u(x)) + M''/(4M^2) - 7 M'^2/(16 M^3) + c_bar,
 *      E_n  = a_bar^2 eps_n + c_bar.
 */
namespace semiconf::pct {

struct PCTParams {
    double a_bar;
    double b_bar;
    double c_bar;
};

/// M(x) = (1 + x/a)^{-m}; same definition as semiconf::mass.
class MassProfile {
public:
    MassProfile(double a, double m) : a_(a), m_(m)
    {
        if (!(a > 0.0))
            throw parameter_error("MassProfile: a must be positive");
        if (!(m > 0.0 && m < 2.0))
            throw parameter_error("MassProfile: m must lie in (0, 2)");
    }
    explicit MassProfile(const SemiconfinedModel& model) : MassProfile(model.a(), model.m()) {}

    double a() const noexcept { return a_; }
    double m() const noexcept { return m_; }
    double operator()(double x) const { return power_law_mass(a_, m_, x); }

private:
    double a_;
    double m_;
};

namespace detail {
inline double log_offset(const MassProfile& profile, double x, const char* who)
{
    if (!(x > -profile.a()))
        throw parameter_error(std::string(who) + ": x must exceed -a");
    return std::log1p(x / profile.a());
}
} // namespace detail

/// v(x) = (2a/(2-m)) (1 + x/a)^{1-m/2}, the antiderivative of sqrt(M) vanishing at the wall.
inline double velocity_integral(const MassProfile& profile, double x)
{
    const double log_y = detail::log_offset(profile, x, "velocity_integral");
    const double two_m = 2.0 - profile.m();
    return 2.0 * profile.a() / two_m * std::exp(0.5 * two_m * log_y);
}

/// a_bar = sqrt(w / (2 w_bar)), b_bar = 0, c_bar = -w alpha / 2.
inline PCTParams canonical_params(double omega, double omega_bar, double alpha)
{
    if (!(omega > 0.0) || !(omega_bar > 0.0))
        throw parameter_error("canonical_params: frequencies must be positive");
    return {std::sqrt(omega / (2.0 * omega_bar)), 0.0, -0.5 * omega * alpha};
}

inline double change_of_variable(const MassProfile& profile, const PCTParams& params, double x)
{
    return params.a_bar * velocity_integral(profile, x) + params.b_bar;
}

/// Analytic inverse x(u) of change_of_variable.
inline double inverse_change_of_variable(const MassProfile& profile, const PCTParams& params, double u)
{
    const double two_m = 2.0 - profile.m();
    const double v = (u - params.b_bar) / params.a_bar;
    if (!(v > 0.0))
        throw parameter_error("inverse_change_of_variable: u lies outside the image of (-a, infinity)");
    return profile.a() * (std::pow(two_m * v / (2.0 * profile.a()), 2.0 / two_m) - 1.0);
}

/// M''/(4M^2) - 7M'^2/(16M^3) = -m(3m-4)(1+x/a)^{m-2} / (16 a^2).
inline double mass_correction(const MassProfile& profile, double x)
{
    const double log_y = detail::log_offset(profile, x, "mass_correction");
    const double m = profile.m(), a = profile.a();
    return -m * (3.0 * m - 4.0) * std::exp((m - 2.0) * log_y) / (16.0 * a * a);
}

/// Isotonic source for a target model: g = alpha^2 - 1/4, which needs alpha > 1/2.
inline IsotonicModel isotonic_source(const SemiconfinedModel& model, double omega_bar)
{
    if (!(model.alpha() > 0.5))
        throw parameter_error("isotonic_source: the isotonic source needs alpha > 1/2 (g > 0)");
    return IsotonicModel(omega_bar, model.alpha() * model.alpha() - 0.25);
}

inline double transform_potential(const IsotonicModel& iso, const MassProfile& profile,
                                  const PCTParams& params, double x)
{
    const double u = change_of_variable(profile, params, x);
    return params.a_bar * params.a_bar * isotonic_potential(iso, u) + mass_correction(profile, x) +
           params.c_bar;
}

inline double transform_energy(const IsotonicModel& iso, const PCTParams& params, unsigned n)
{
    return params.a_bar * params.a_bar * isotonic_energy(iso, n) + params.c_bar;
}

/// M(x)^{1/4} phi_n(u(x)); proportional to psi_n, normalization left to the caller.
inline double transform_wavefunction(const IsotonicModel& iso, const MassProfile& profile,
                                     const PCTParams& params, unsigned n, double x)
{
    const double u = change_of_variable(profile, params, x);
    return std::pow(profile(x), 0.25) * isotonic_wavefunction(iso, n, u);
}

/** The full pipeline for one target model, with the source frequency w_bar
 *  as a free gauge (default 2w). Every output is independent of w_bar.
 */
class Pipeline {
public:
    explicit Pipeline(const SemiconfinedModel& model) : Pipeline(model, 2.0 * model.omega()) {}
    Pipeline(const SemiconfinedModel& model, double omega_bar)
        : iso_(isotonic_source(model, omega_bar)),
          profile_(model),
          params_(canonical_params(model.omega(), omega_bar, model.alpha()))
    {
    }

    const IsotonicModel& source() const noexcept { return iso_; }
    const MassProfile& profile() const noexcept { return profile_; }
    const PCTParams& params() const noexcept { return params_; }

    double potential(double x) const { return transform_potential(iso_, profile_, params_, x); }
    double energy(unsigned n) const { return transform_energy(iso_, params_, n); }
    double wavefunction(unsigned n, double x) const
    {
        return transform_wavefunction(iso_, profile_, params_, n, x);
    }

private:
    IsotonicModel iso_;
    MassProfile profile_;
    PCTParams params_;
};

} // namespace semiconf::pct

#endif // SEMICONF_PCT_HPP

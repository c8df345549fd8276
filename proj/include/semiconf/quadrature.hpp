#ifndef SEMICONF_QUADRATURE_HPP
#define SEMICONF_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "errors.hpp"

namespace semiconf {

enum class QuadratureScheme { adaptive, composite };

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::adaptive;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Adaptive: maximum number of panel bisections. Composite: number of panels.
    int max_subdivisions = 2000;

    void validate() const
    {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
            throw parameter_error("QuadratureSpec: tolerances must be positive and max_subdivisions >= 1");
    }
};

namespace detail {

inline constexpr std::size_t gl_order = 15;

struct GaussLegendreRule {
    std::array<double, gl_order> nodes{};
    std::array<double, gl_order> weights{};
};

// Roots of P_15 by Newton iteration from the Chebyshev guesses.
inline GaussLegendreRule make_gauss_legendre()
{
    GaussLegendreRule rule;
    constexpr int n = static_cast<int>(gl_order);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre_15()
{
    static const GaussLegendreRule rule = make_gauss_legendre();
    return rule;
}

template <class F>
double gl_panel(F& f, double lo, double hi)
{
    const auto& rule = gauss_legendre_15();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl_order; ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

struct Panel {
    double lo, hi, value, error;
};

template <class F>
Panel make_panel(F& f, double lo, double hi)
{
    const double mid = 0.5 * (lo + hi);
    const double whole = gl_panel(f, lo, hi);
    const double halves = gl_panel(f, lo, mid) + gl_panel(f, mid, hi);
    return {lo, hi, halves, std::abs(halves - whole)};
}

} // namespace detail

/** Integral of f over [lo, hi].
 *
 *  The adaptive scheme keeps a max-heap of 15-point Gauss-Legendre panels
 *  ordered by their error estimate (difference between one panel and its two
 *  halves) and bisects the worst panel until the summed error is below
 *  max(abs_tol, rel_tol * |result|). Throws convergence_error carrying the
 *  best estimate if max_subdivisions is exhausted.
 */
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!(lo < hi))
        throw parameter_error("integrate: require lo < hi");

    if (spec.scheme == QuadratureScheme::composite) {
        const int panels = spec.max_subdivisions;
        const double width = (hi - lo) / panels;
        double sum = 0.0;
        for (int i = 0; i < panels; ++i) {
            const double a = lo + i * width;
            const double b = (i + 1 == panels) ? hi : a + width;
            sum += detail::gl_panel(f, a, b);
        }
        return sum;
    }

    std::vector<detail::Panel> panels{detail::make_panel(f, lo, hi)};
    for (int split = 0;; ++split) {
        double value = 0.0, error = 0.0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
        }
        if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)))
            return value;
        if (split >= spec.max_subdivisions)
            throw convergence_error("integrate: no convergence within max_subdivisions", value, error);

        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const auto& a, const auto& b) { return a.error < b.error; });
        const double a = worst->lo, b = worst->hi, mid = 0.5 * (a + b);
        *worst = detail::make_panel(f, a, mid);
        panels.push_back(detail::make_panel(f, mid, b));
    }
}

/** Upper truncation point for an integrand decaying on [lo, infinity).
 *
 *  Samples f at lo + step * 2^k and returns the first sample point after which
 *  two consecutive samples fall below `threshold` times the running peak of
 *  |f|. Requiring two samples keeps an isolated node of f from ending the search.
 */
template <class F>
double truncation_point(F&& f, double lo, double step, double threshold = 1e-18, int max_doublings = 200)
{
    if (!(step > 0.0))
        throw parameter_error("truncation_point: step must be positive");
    double peak = 0.0;
    int below = 0;
    double x = lo + step;
    for (int k = 0; k < max_doublings; ++k, x = lo + (x - lo) * 2.0) {
        const double v = std::abs(f(x));
        peak = std::max(peak, v);
        if (peak > 0.0 && v < threshold * peak) {
            if (++below == 2)
                return x;
        } else {
            below = 0;
        }
    }
    throw convergence_error("truncation_point: integrand does not decay", x, 0.0);
}

/// Integral over [lo, infinity) of a decaying integrand, truncated per truncation_point.
template <class F>
double integrate_to_infinity(F&& f, double lo, double step, const QuadratureSpec& spec = {})
{
    const double hi = truncation_point(f, lo, step);
    return integrate(f, lo, hi, spec);
}

} // namespace semiconf

#endif // SEMICONF_QUADRATURE_HPP

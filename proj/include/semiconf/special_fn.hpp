#ifndef SEMICONF_SPECIAL_FN_HPP
#define SEMICONF_SPECIAL_FN_HPP

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>

#include "errors.hpp"

namespace semiconf {

/** Generalized Laguerre polynomial L_n^{(alpha)}(z).
 *
 *  Upward three-term recurrence in n,
 *
 *      k L_k = (2k - 1 + alpha - z) L_{k-1} - (k - 1 + alpha) L_{k-2},
 *
 *  started from L_0 = 1 and L_1 = 1 + alpha - z. The recurrence is stable for
 *  z >= 0 and alpha > 0, which covers every argument produced by the models.
 */
template <std::floating_point T>
T laguerre(unsigned n, T alpha, T z)
{
    if (!(alpha > T(-1)))
        throw parameter_error("laguerre: alpha must be > -1");

    T lm1 = T(1);
    if (n == 0)
        return lm1;
    T l = T(1) + alpha - z;
    for (unsigned k = 2; k <= n; ++k) {
        const T next = ((T(2 * k - 1) + alpha - z) * l - (T(k - 1) + alpha) * lm1) / T(k);
        lm1 = l;
        l = next;
    }
    return l;
}

/** Natural logarithm of the gamma function for x > 0.
 *
 *  Lanczos approximation with g = 7 and nine coefficients, applied for
 *  x >= 1/2; smaller arguments are shifted up once with
 *  ln Gamma(x) = ln Gamma(x + 1) - ln x.
 */
template <std::floating_point T>
T log_gamma(T x)
{
    if (!(x > T(0)))
        throw parameter_error("log_gamma: argument must be positive");
    if (x < T(0.5))
        return log_gamma(x + T(1)) - std::log(x);

    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

    const T z = x - T(1);
    T series = T(coef[0]);
    for (std::size_t i = 1; i < coef.size(); ++i)
        series += T(coef[i]) / (z + T(i));
    const T t = z + T(g) + T(0.5);
    return T(0.5) * std::log(T(2) * std::numbers::pi_v<T>) + (z + T(0.5)) * std::log(t) - t +
           std::log(series);
}

} // namespace semiconf

#endif // SEMICONF_SPECIAL_FN_HPP

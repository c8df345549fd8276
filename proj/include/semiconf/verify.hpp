#ifndef SEMICONF_VERIFY_HPP
#define SEMICONF_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "errors.hpp"
#include "models.hpp"
#include "pct.hpp"
#include "quadrature.hpp"

// Numerical checks that do not trust the closed forms: a finite-difference
// BenDaniel-Duke Hamiltonian diagonalized by Sturm bisection, quadrature Gram
// matrices, operator residuals and a golden-section minimizer.

namespace semiconf::verify {

/** Discretization nodes on [x_lo, x_hi]; the two end nodes carry Dirichlet
 *  conditions. Nodes are either uniform in x or uniform in the graded
 *  coordinate (x - wall)^exponent, which clusters them toward the wall.
 */
class Grid {
public:
    static Grid uniform(double x_lo, double x_hi, std::size_t n_points)
    {
        check(x_lo, x_hi, n_points);
        std::vector<double> nodes(n_points);
        const double h = (x_hi - x_lo) / static_cast<double>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i)
            nodes[i] = x_lo + static_cast<double>(i) * h;
        nodes.back() = x_hi;
        return Grid(std::move(nodes), true);
    }

    /// Uniform grid with a prescribed spacing; x_hi is rounded up to a whole number of steps.
    static Grid with_spacing(double x_lo, double x_hi, double spacing)
    {
        if (!(spacing > 0.0))
            throw parameter_error("Grid: spacing must be positive");
        const auto steps = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / spacing - 1e-9));
        return uniform(x_lo, x_lo + static_cast<double>(steps) * spacing, steps + 1);
    }

    static Grid graded(double x_lo, double x_hi, std::size_t n_points, double wall, double exponent)
    {
        check(x_lo, x_hi, n_points);
        if (!(x_lo > wall) || !(exponent > 0.0))
            throw parameter_error("Grid: graded grid needs x_lo > wall and a positive exponent");
        const double xi_lo = std::pow(x_lo - wall, exponent);
        const double xi_hi = std::pow(x_hi - wall, exponent);
        return Grid(graded_nodes(xi_lo, (xi_hi - xi_lo) / static_cast<double>(n_points - 1), n_points, wall,
                                 exponent, x_lo, x_hi),
                    false);
    }

    /// Graded grid with a prescribed step in the graded coordinate; x_hi is rounded up.
    static Grid graded_with_step(double x_lo, double x_hi, double step, double wall, double exponent)
    {
        if (!(step > 0.0) || !(x_lo > wall) || !(exponent > 0.0) || !(x_hi > x_lo))
            throw parameter_error("Grid: invalid graded grid");
        const double xi_lo = std::pow(x_lo - wall, exponent);
        const double xi_hi = std::pow(x_hi - wall, exponent);
        const auto steps = static_cast<std::size_t>(std::ceil((xi_hi - xi_lo) / step - 1e-9));
        const double top = wall + std::pow(xi_lo + static_cast<double>(steps) * step, 1.0 / exponent);
        check(x_lo, top, steps + 1);
        return Grid(graded_nodes(xi_lo, step, steps + 1, wall, exponent, x_lo, top), false);
    }

    double x_lo() const noexcept { return nodes_.front(); }
    double x_hi() const noexcept { return nodes_.back(); }
    std::size_t n_points() const noexcept { return nodes_.size(); }
    std::size_t n_interior() const noexcept { return nodes_.size() - 2; }
    double point(std::size_t i) const noexcept { return nodes_[i]; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    bool is_uniform() const noexcept { return uniform_; }

    /// Largest node spacing (the spacing itself on uniform grids).
    double spacing() const noexcept
    {
        double h = 0.0;
        for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
            h = std::max(h, nodes_[i + 1] - nodes_[i]);
        return h;
    }

private:
    Grid(std::vector<double> nodes, bool uniform) : nodes_(std::move(nodes)), uniform_(uniform) {}

    static void check(double x_lo, double x_hi, std::size_t n_points)
    {
        if (!(x_hi > x_lo))
            throw parameter_error("Grid: x_hi must exceed x_lo");
        if (n_points < 3)
            throw parameter_error("Grid: need at least 3 points");
    }

    static std::vector<double> graded_nodes(double xi_lo, double step, std::size_t n, double wall, double exponent,
                                            double x_lo, double x_hi)
    {
        std::vector<double> nodes(n);
        for (std::size_t i = 0; i < n; ++i)
            nodes[i] = wall + std::pow(xi_lo + static_cast<double>(i) * step, 1.0 / exponent);
        nodes.front() = x_lo;
        nodes.back() = x_hi;
        return nodes;
    }

    std::vector<double> nodes_;
    bool uniform_;
};

/// Symmetric tridiagonal matrix; off_diagonal has one element fewer than diagonal.
struct TridiagonalMatrix {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    std::size_t size() const noexcept { return diagonal.size(); }
};

/** Flux-conservative discretization of -d/dx k(x) d/dx + V(x), k = 1/M, on
 *  the interior nodes of `grid`, with k taken at cell midpoints and psi = 0
 *  at both end nodes. On a uniform grid of spacing h
 *
 *      H_ii     = (k_{i+1/2} + k_{i-1/2}) / h^2 + V(x_i)
 *      H_i,i+1  = -k_{i+1/2} / h^2.
 *
 *  On a graded grid the rows are divided by the dual-cell widths
 *  w_i = (x_{i+1} - x_{i-1}) / 2 and symmetrized as W^{-1/2} A W^{-1/2},
 *  which has the same spectrum as the generalized problem A psi = E W psi.
 */
template <class InverseMass, class Potential>
TridiagonalMatrix build_hamiltonian(InverseMass&& inverse_mass, Potential&& pot, const Grid& grid)
{
    const std::size_t n = grid.n_interior();
    const auto& x = grid.nodes();

    TridiagonalMatrix matrix;
    matrix.diagonal.resize(n);
    matrix.off_diagonal.resize(n - 1);

    // conductance k_{i+1/2} / (x_{i+1} - x_i) of the cell right of node i
    const auto conductance = [&](std::size_t i) {
        return inverse_mass(0.5 * (x[i] + x[i + 1])) / (x[i + 1] - x[i]);
    };
    std::vector<double> width(n);
    for (std::size_t j = 0; j < n; ++j)
        width[j] = 0.5 * (x[j + 2] - x[j]);

    double left = conductance(0);
    for (std::size_t j = 0; j < n; ++j) {
        const double right = conductance(j + 1);
        matrix.diagonal[j] = (left + right) / width[j] + pot(x[j + 1]);
        if (j + 1 < n)
            matrix.off_diagonal[j] = -right / std::sqrt(width[j] * width[j + 1]);
        left = right;
    }
    return matrix;
}

inline double inverse_mass(const SemiconfinedModel& model, double x)
{
    return std::exp(model.m() * std::log1p(x / model.a()));
}

inline TridiagonalMatrix build_hamiltonian(const SemiconfinedModel& model, const Grid& grid)
{
    if (!(grid.x_lo() > -model.a()) || on_wall(model, grid.x_lo()))
        throw parameter_error("build_hamiltonian: grid must lie strictly inside (-a, infinity)");
    return build_hamiltonian([&](double x) { return inverse_mass(model, x); },
                             [&](double x) { return potential(model, x); }, grid);
}

/** The discrete operator of build_hamiltonian applied to node values `psi`
 *  (full grid, end values included), before symmetrization:
 *  result[i] = (H psi)(x_i) at interior nodes, 0 at the two end nodes.
 */
inline std::vector<double> apply_hamiltonian(const SemiconfinedModel& model, const Grid& grid,
                                             const std::vector<double>& psi)
{
    if (psi.size() != grid.n_points())
        throw parameter_error("apply_hamiltonian: psi must have one value per node");
    const auto& x = grid.nodes();
    std::vector<double> out(psi.size(), 0.0);
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        const double k_left = inverse_mass(model, 0.5 * (x[i - 1] + x[i]));
        const double k_right = inverse_mass(model, 0.5 * (x[i] + x[i + 1]));
        const double flux = k_right * (psi[i + 1] - psi[i]) / (x[i + 1] - x[i]) -
                            k_left * (psi[i] - psi[i - 1]) / (x[i] - x[i - 1]);
        out[i] = -flux / (0.5 * (x[i + 1] - x[i - 1])) + potential(model, x[i]) * psi[i];
    }
    return out;
}

/// Number of eigenvalues strictly below `shift` (negative pivots of LDL^T of T - shift).
inline std::size_t sturm_count(const TridiagonalMatrix& matrix, double shift)
{
    std::size_t count = 0;
    double pivot = 1.0;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        const double coupling = (i == 0) ? 0.0 : matrix.off_diagonal[i - 1] * matrix.off_diagonal[i - 1];
        pivot = matrix.diagonal[i] - shift - (i == 0 ? 0.0 : coupling / pivot);
        if (pivot == 0.0)
            pivot = -std::numeric_limits<double>::epsilon() * (std::abs(matrix.diagonal[i]) + std::abs(shift) + 1.0);
        if (pivot < 0.0)
            ++count;
    }
    return count;
}

/** The k smallest eigenvalues in ascending order, each bracketed from the
 *  Gershgorin interval and bisected on the Sturm count down to
 *  1e-10 * max(1, |lambda|).
 */
inline std::vector<double> lowest_eigenvalues(const TridiagonalMatrix& matrix, std::size_t k)
{
    const std::size_t n = matrix.size();
    if (k < 1 || k > n)
        throw parameter_error("lowest_eigenvalues: k must lie in [1, dimension]");

    double lower = std::numeric_limits<double>::infinity();
    double upper = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double radius = (i > 0 ? std::abs(matrix.off_diagonal[i - 1]) : 0.0) +
                              (i + 1 < n ? std::abs(matrix.off_diagonal[i]) : 0.0);
        lower = std::min(lower, matrix.diagonal[i] - radius);
        upper = std::max(upper, matrix.diagonal[i] + radius);
    }
    const double pad = 1e-12 * std::max({1.0, std::abs(lower), std::abs(upper)});
    lower -= pad;
    upper += pad;

    std::vector<double> values;
    values.reserve(k);
    double floor = lower;
    for (std::size_t j = 0; j < k; ++j) {
        // smallest x with at least j+1 eigenvalues below it
        double lo = floor, hi = upper;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= 1e-10 * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi)
                break;
            if (sturm_count(matrix, mid) >= j + 1)
                hi = mid;
            else
                lo = mid;
        }
        const double value = 0.5 * (lo + hi);
        values.push_back(value);
        floor = lo;
    }
    return values;
}

/// Exponent of the natural coordinate v(x) ~ (x + a)^{1 - m/2}.
inline double natural_exponent(const SemiconfinedModel& model)
{
    return 1.0 - 0.5 * model.m();
}

/** First x beyond which psi_n^2 stays below `threshold` times its peak. A
 *  doubling search brackets the crossing, then a 2000-point scan of the
 *  bracket returns the scan point following the last one above threshold.
 */
inline double density_cutoff(const SemiconfinedModel& model, unsigned n, double threshold)
{
    const double a = model.a();
    const auto density = [&](double x) {
        const double psi = wavefunction(model, n, x);
        return psi * psi;
    };
    const double bracket = truncation_point(density, -a, 0.01 * a, threshold);
    constexpr std::size_t scan = 2000;
    std::vector<double> values(scan + 1);
    double peak = 0.0;
    for (std::size_t i = 0; i <= scan; ++i) {
        values[i] = density(-a + (bracket + a) * static_cast<double>(i) / scan);
        peak = std::max(peak, values[i]);
    }
    std::size_t last = 0;
    for (std::size_t i = 0; i <= scan; ++i)
        if (values[i] >= threshold * peak)
            last = i;
    return -a + (bracket + a) * static_cast<double>(std::min(last + 1, scan)) / scan;
}

/// Upper window edge: ground-state density below 1e-16 of its peak.
inline double default_x_hi(const SemiconfinedModel& model)
{
    return density_cutoff(model, 0, 1e-16);
}

/** Grid used when none is given: n_points nodes from x_lo = -a + 1e-6 a to
 *  default_x_hi, uniform in the natural coordinate (x + a)^{1 - m/2}.
 */
inline Grid default_grid(const SemiconfinedModel& model, std::size_t n_points = 4000, double x_hi = 0.0)
{
    const double a = model.a();
    return Grid::graded(-a + 1e-6 * a, x_hi > 0.0 ? x_hi : default_x_hi(model), n_points, -a,
                        natural_exponent(model));
}

struct SpectrumEntry {
    unsigned n;
    double analytic;
    double numeric;
    double rel_error;
};

inline std::vector<SpectrumEntry> spectrum_check(const SemiconfinedModel& model, const Grid& grid, std::size_t k)
{
    const auto numeric = lowest_eigenvalues(build_hamiltonian(model, grid), k);
    std::vector<SpectrumEntry> rows;
    rows.reserve(k);
    for (std::size_t n = 0; n < k; ++n) {
        const double exact = energy(model, static_cast<unsigned>(n));
        rows.push_back({static_cast<unsigned>(n), exact, numeric[n], std::abs(numeric[n] - exact) / std::abs(exact)});
    }
    return rows;
}

struct GramMatrix {
    std::vector<std::vector<double>> values;
    /// Entries whose quadrature hit max_subdivisions; their values are best estimates.
    std::vector<std::pair<unsigned, unsigned>> unconverged;
    double cutoff = 0.0;

    double max_deviation_from_identity() const
    {
        double worst = 0.0;
        for (std::size_t j = 0; j < values.size(); ++j)
            for (std::size_t k = 0; k < values.size(); ++k)
                worst = std::max(worst, std::abs(values[j][k] - (j == k ? 1.0 : 0.0)));
        return worst;
    }
};

/// G_jk = integral of psi_j psi_k over (-a, infinity) for j, k <= n_max.
inline GramMatrix gram_matrix(const SemiconfinedModel& model, unsigned n_max, const QuadratureSpec& spec = {})
{
    const double a = model.a();
    const auto envelope = [&](double x) {
        double peak = 0.0;
        for (unsigned n = 0; n <= n_max; ++n) {
            const double psi = wavefunction(model, n, x);
            peak = std::max(peak, psi * psi);
        }
        return peak;
    };

    GramMatrix gram;
    gram.cutoff = truncation_point(envelope, -a, 0.01 * a, 1e-18);
    gram.values.assign(n_max + 1, std::vector<double>(n_max + 1, 0.0));
    for (unsigned j = 0; j <= n_max; ++j) {
        for (unsigned k = j; k <= n_max; ++k) {
            const auto integrand = [&](double x) { return wavefunction(model, j, x) * wavefunction(model, k, x); };
            double value;
            try {
                value = integrate(integrand, -a, gram.cutoff, spec);
            } catch (const convergence_error& e) {
                value = e.estimate();
                gram.unconverged.emplace_back(j, k);
            }
            gram.values[j][k] = value;
            gram.values[k][j] = value;
        }
    }
    return gram;
}

/// Fraction of a next to the wall excluded from residual checks.
inline constexpr double residual_wall_exclusion = 0.05;

/** Relative residual ||H psi_n - E_n psi_n|| / ||E_n psi_n|| for n <= n_max,
 *  where H is the discrete operator of build_hamiltonian applied to the
 *  analytic psi_n at the grid nodes. Nodes closer than 0.05 a to the wall
 *  are left out of both norms.
 */
inline std::vector<double> residual_norms(const SemiconfinedModel& model, const Grid& grid, unsigned n_max)
{
    const double a = model.a();
    if (!(grid.x_lo() > -a))
        throw parameter_error("residual_norms: grid must lie inside (-a, infinity)");

    const double x_start = -a + residual_wall_exclusion * a;
    std::vector<double> norms;
    std::vector<double> psi(grid.n_points());
    for (unsigned n = 0; n <= n_max; ++n) {
        for (std::size_t i = 0; i < grid.n_points(); ++i)
            psi[i] = wavefunction(model, n, grid.point(i));
        const auto h_psi = apply_hamiltonian(model, grid, psi);
        const double e = energy(model, n);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 1; i + 1 < grid.n_points(); ++i) {
            if (grid.point(i) < x_start)
                continue;
            const double r = h_psi[i] - e * psi[i];
            num += r * r;
            den += e * e * psi[i] * psi[i];
        }
        norms.push_back(std::sqrt(num / den));
    }
    return norms;
}

/** Golden-section minimization of f on [lo, hi] to an interval width of `tol`.
 *  Templated on the real type; numeric_minimum runs it in quad precision.
 */
template <class T, class F>
T golden_section_minimize(F&& f, T lo, T hi, T tol)
{
    using std::sqrt;
    const T inv_phi = (sqrt(T(5)) - T(1)) / T(2);
    T c = hi - inv_phi * (hi - lo);
    T d = lo + inv_phi * (hi - lo);
    T fc = f(c), fd = f(d);
    while (hi - lo > tol) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
        if (!(c < d))
            break;
    }
    return T(0.5) * (lo + hi);
}

/** Numerical minimum of the potential: the argmin of a 4000-point scan over
 *  (-a, x_hi] brackets a golden-section search carried out in 113-bit
 *  floating point. Near a minimum V varies quadratically, so locating x_min
 *  to 1e-9 needs V resolved far below double precision.
 */
inline PotentialMinimum numeric_minimum(const SemiconfinedModel& model, double x_hi)
{
    using quad = boost::multiprecision::cpp_bin_float_quad;
    const double a = model.a();
    const auto f = [&](const quad& x) { return potential<quad>(model, x); };

    constexpr std::size_t samples = 4000;
    const double lo = -a + 1e-6 * a;
    const double step = (x_hi - lo) / (samples - 1);
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
        const double v = potential(model, lo + step * static_cast<double>(i));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }
    const quad left = quad(lo) + quad(step) * (best == 0 ? 0 : best - 1);
    const quad right = quad(lo) + quad(step) * std::min(best + 1, samples - 1);
    const quad x = golden_section_minimize<quad>(f, left, right, quad(1e-20));
    return {static_cast<double>(x), static_cast<double>(f(x))};
}

struct Check {
    std::string name;
    double deviation;
    double tolerance;
    bool passed;
};

inline Check make_check(std::string name, double deviation, double tolerance)
{
    // NaN deviations fail
    return {std::move(name), deviation, tolerance, deviation <= tolerance};
}

enum class PotentialVariant {
    closed_form,
    /// Constant term -w*a/2 instead of -w*alpha/2; a negative control for the PCT identity.
    a_offset,
};

inline double potential_variant(const SemiconfinedModel& model, PotentialVariant variant, double x)
{
    const double v = potential(model, x);
    if (variant == PotentialVariant::a_offset)
        return v + 0.5 * model.omega() * (model.alpha() - model.a());
    return v;
}

/// Max |PCT potential - candidate| over `points` log-spaced offsets from the wall in [1e-3, 1e3].
inline double pct_identity_deviation(const SemiconfinedModel& model, PotentialVariant variant,
                                     double omega_bar, std::size_t points = 100)
{
    const pct::Pipeline pipeline(model, omega_bar);
    double worst = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double offset = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(points - 1));
        const double x = -model.a() + offset;
        worst = std::max(worst, std::abs(pipeline.potential(x) - potential_variant(model, variant, x)));
    }
    return worst;
}

struct VerifyOptions {
    std::size_t grid_points = 4000;
    /// Upper grid limit; 0 selects the default doubling search.
    double x_max = 0.0;
    std::size_t spectrum_states = 4;
    unsigned gram_n_max = 8;
    unsigned residual_n_max = 4;
    double residual_spacing = 1e-3;
    double omega_bar = 0.0; // 0 selects 2 * omega
    PotentialVariant variant = PotentialVariant::closed_form;
    QuadratureSpec quadrature{};

    double spectrum_tol = 1e-3;
    double gram_tol = 1e-8;
    double pct_tol = 1e-10;
    double residual_tol = 1e-4;
    double minimum_tol = 1e-9;
};

struct VerificationReport {
    double omega, a, alpha, m;
    Grid grid;
    std::vector<SpectrumEntry> spectrum;
    unsigned gram_n_max;
    double gram_max_deviation;
    std::size_t gram_unconverged;
    double pct_max_deviation;
    double residual_spacing;
    double residual_exclusion;
    std::vector<double> residuals;
    PotentialMinimum closed_minimum;
    PotentialMinimum numeric_minimum;
    std::vector<Check> checks;

    bool all_passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
};

/** Runs every check on `model` and records each deviation with its tolerance
 *  and verdict. Check failures never throw; only invalid inputs do.
 */
inline VerificationReport full_report(const SemiconfinedModel& model, const VerifyOptions& options = {})
{
    const Grid grid = default_grid(model, options.grid_points, options.x_max);
    const double omega_bar = options.omega_bar > 0.0 ? options.omega_bar : 2.0 * model.omega();

    VerificationReport report{model.omega(), model.a(), model.alpha(), model.m(), grid, {}, options.gram_n_max,
                              0.0, 0, 0.0, options.residual_spacing, residual_wall_exclusion * model.a(),
                              {}, {}, {}, {}};

    report.spectrum = spectrum_check(model, grid, options.spectrum_states);
    for (const auto& row : report.spectrum)
        report.checks.push_back(make_check("spectrum_n" + std::to_string(row.n), row.rel_error, options.spectrum_tol));

    const auto gram = gram_matrix(model, options.gram_n_max, options.quadrature);
    report.gram_max_deviation = gram.max_deviation_from_identity();
    report.gram_unconverged = gram.unconverged.size();
    report.checks.push_back(make_check("gram_orthonormality", report.gram_max_deviation, options.gram_tol));

    report.pct_max_deviation = pct_identity_deviation(model, options.variant, omega_bar);
    report.checks.push_back(make_check("pct_identity", report.pct_max_deviation, options.pct_tol));

    const Grid residual_grid =
        Grid::with_spacing(-model.a() + 1e-6 * model.a(), grid.x_hi(), options.residual_spacing);
    report.residuals = residual_norms(model, residual_grid, options.residual_n_max);
    for (std::size_t n = 0; n < report.residuals.size(); ++n)
        report.checks.push_back(make_check("residual_n" + std::to_string(n), report.residuals[n], options.residual_tol));

    try {
        report.closed_minimum = potential_minimum(model);
        report.numeric_minimum = numeric_minimum(model, grid.x_hi());
        report.checks.push_back(make_check(
            "minimum_x", std::abs(report.closed_minimum.x_min - report.numeric_minimum.x_min), options.minimum_tol));
        report.checks.push_back(make_check(
            "minimum_v", std::abs(report.closed_minimum.v_min - report.numeric_minimum.v_min), options.minimum_tol));
    } catch (const parameter_error&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        report.closed_minimum = report.numeric_minimum = {nan, nan};
        report.checks.push_back(make_check("minimum_exists", nan, options.minimum_tol));
    }
    return report;
}

} // namespace semiconf::verify

#endif // SEMICONF_VERIFY_HPP

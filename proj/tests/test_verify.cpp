#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "semiconf/models.hpp"
#include "semiconf/verify.hpp"

using namespace semiconf;
using namespace semiconf::verify;

namespace {

TridiagonalMatrix laplacian(std::size_t n)
{
    return {std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
}

} // namespace

TEST(Eigen, DiagonalAndTwoByTwo)
{
    const TridiagonalMatrix diag{{3.0, 1.0, 2.0}, {0.0, 0.0}};
    const auto d = lowest_eigenvalues(diag, 3);
    EXPECT_NEAR(d[0], 1.0, 1e-9);
    EXPECT_NEAR(d[1], 2.0, 1e-9);
    EXPECT_NEAR(d[2], 3.0, 1e-9);

    const TridiagonalMatrix two{{2.0, 2.0}, {-1.0}};
    const auto t = lowest_eigenvalues(two, 2);
    EXPECT_NEAR(t[0], 1.0, 1e-9);
    EXPECT_NEAR(t[1], 3.0, 1e-9);

    EXPECT_THROW(lowest_eigenvalues(two, 3), parameter_error);
    EXPECT_THROW(lowest_eigenvalues(two, 0), parameter_error);
}

TEST(Eigen, LaplacianMatchesClosedForm)
{
    const std::size_t n = 50;
    const auto values = lowest_eigenvalues(laplacian(n), 10);
    for (std::size_t j = 0; j < 10; ++j) {
        const double s = std::sin((j + 1) * M_PI / (2.0 * (n + 1)));
        EXPECT_NEAR(values[j], 4 * s * s, 1e-10);
    }
    EXPECT_TRUE(std::is_sorted(values.begin(), values.end()));
}

TEST(Eigen, SturmCount)
{
    const auto matrix = laplacian(20);
    EXPECT_EQ(sturm_count(matrix, -1.0), 0u);
    EXPECT_EQ(sturm_count(matrix, 5.0), 20u);
    const auto values = lowest_eigenvalues(matrix, 20);
    for (std::size_t j = 0; j < 20; ++j)
        EXPECT_EQ(sturm_count(matrix, values[j] + 1e-6), j + 1);
}

TEST(Hamiltonian, ConstantMassOscillator)
{
    // -psi'' + x^2 psi / 4 has eigenvalues n + 1/2
    const auto grid = Grid::uniform(-12.0, 12.0, 4001);
    const auto matrix = build_hamiltonian([](double) { return 1.0; }, [](double x) { return 0.25 * x * x; }, grid);
    const auto values = lowest_eigenvalues(matrix, 3);
    EXPECT_NEAR(values[0], 0.5, 1e-5);
    EXPECT_NEAR(values[1], 1.5, 1e-5);
    EXPECT_NEAR(values[2], 2.5, 1e-5);
}

TEST(Hamiltonian, RowMatchesTaylorOracle)
{
    // uniform grid, k = 1 + x^2 / 10, psi = exp(-x^2): the discrete row equals
    // -(k psi')' + V psi up to O(h^2)
    const auto grid = Grid::uniform(-3.0, 3.0, 601);
    const auto k = [](double x) { return 1.0 + 0.1 * x * x; };
    const auto v = [](double x) { return std::cos(x); };
    const auto matrix = build_hamiltonian(k, v, grid);
    const double h = grid.spacing();
    for (std::size_t i : {100u, 250u, 300u, 450u}) {
        const double x = grid.point(i);
        const auto psi = [](double s) { return std::exp(-s * s); };
        const double row = matrix.off_diagonal[i - 2] * psi(x - h) + matrix.diagonal[i - 1] * psi(x) +
                           matrix.off_diagonal[i - 1] * psi(x + h);
        const double dpsi = -2 * x * psi(x);
        const double d2psi = (4 * x * x - 2) * psi(x);
        const double exact = -(0.2 * x * dpsi + k(x) * d2psi) + v(x) * psi(x);
        EXPECT_NEAR(row, exact, 1e-3) << "x=" << x;
    }
}

TEST(Hamiltonian, SymmetricGradedMatrixMatchesUnsymmetrizedOperator)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.5);
    const auto grid = Grid::graded(-2.0 + 1e-6, 20.0, 200, -2.0, 0.25);
    const auto matrix = build_hamiltonian(model, grid);
    // D^{1/2} (W^{-1/2} A W^{-1/2}) D^{-1/2} applied to a vector, via the generalized form
    std::vector<double> psi(grid.n_points(), 0.0);
    for (std::size_t i = 1; i + 1 < grid.n_points(); ++i)
        psi[i] = std::sin(0.3 * grid.point(i)) * std::exp(-0.1 * grid.point(i));
    const auto h_psi = apply_hamiltonian(model, grid, psi);
    for (std::size_t j = 1; j + 1 < grid.n_interior(); ++j) {
        const double wj = 0.5 * (grid.point(j + 2) - grid.point(j));
        const double wl = 0.5 * (grid.point(j + 1) - grid.point(j - 1));
        const double wr = 0.5 * (grid.point(j + 3) - grid.point(j + 1));
        // (W^{1/2} S W^{1/2} psi)_j / w_j equals (H psi)_j
        const double s_psi = matrix.off_diagonal[j - 1] * std::sqrt(wl) * psi[j] +
                             matrix.diagonal[j] * std::sqrt(wj) * psi[j + 1] +
                             matrix.off_diagonal[j] * std::sqrt(wr) * psi[j + 2];
        EXPECT_NEAR(s_psi / std::sqrt(wj), h_psi[j + 1], 1e-9 * std::max(1.0, std::abs(h_psi[j + 1])));
    }
}

TEST(Hamiltonian, RejectsGridReachingTheWall)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.0);
    EXPECT_THROW(build_hamiltonian(model, Grid::uniform(-2.0, 10.0, 100)), parameter_error);
    EXPECT_THROW(build_hamiltonian(model, Grid::uniform(-3.0, 10.0, 100)), parameter_error);
    EXPECT_THROW(Grid::uniform(1.0, 0.0, 10), parameter_error);
    EXPECT_THROW(Grid::uniform(0.0, 1.0, 2), parameter_error);
}

TEST(Grid, Construction)
{
    const auto u = Grid::uniform(0.0, 1.0, 11);
    EXPECT_TRUE(u.is_uniform());
    EXPECT_EQ(u.n_interior(), 9u);
    EXPECT_NEAR(u.spacing(), 0.1, 1e-15);
    const auto s = Grid::with_spacing(0.0, 1.05, 0.1);
    EXPECT_NEAR(s.x_hi(), 1.1, 1e-12);
    const auto g = Grid::graded(-2.0 + 1e-6, 30.0, 1000, -2.0, 0.5);
    EXPECT_FALSE(g.is_uniform());
    EXPECT_DOUBLE_EQ(g.x_lo(), -2.0 + 1e-6);
    EXPECT_DOUBLE_EQ(g.x_hi(), 30.0);
    for (std::size_t i = 1; i < g.n_points(); ++i)
        EXPECT_GT(g.point(i), g.point(i - 1));
    EXPECT_LT(g.point(1) - g.point(0), g.point(999) - g.point(998));
}

TEST(Spectrum, DefaultWindowExample)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.0);
    const auto grid = default_grid(model);
    EXPECT_GT(grid.x_lo(), -2.0);
    EXPECT_LT(grid.x_lo(), -2.0 + 1e-5);
    const double edge = wavefunction(model, 0, grid.x_hi());
    const double peak = wavefunction(model, 0, potential_minimum(model).x_min);
    EXPECT_LT(edge * edge, 1e-15 * peak * peak);
    for (const auto& row : spectrum_check(model, grid, 4)) {
        EXPECT_EQ(row.analytic, row.n + 0.5);
        EXPECT_LT(row.rel_error, 1e-3);
    }
}

TEST(Spectrum, FixedWindowExample)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.0);
    const auto rows = spectrum_check(model, Grid::uniform(-2.0 + 1e-6, 40.0, 4000), 4);
    for (const auto& row : rows)
        EXPECT_LT(row.rel_error, 1e-3) << "n=" << row.n;
}

TEST(Spectrum, AllExponentsAtDefaults)
{
    for (double m : {0.5, 1.0, 1.5}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        for (const auto& row : spectrum_check(model, default_grid(model), 4))
            EXPECT_LT(row.rel_error, 1e-3) << "m=" << m << " n=" << row.n;
    }
}

TEST(Spectrum, ErrorDecaysQuadratically)
{
    for (double m : {0.5, 1.0}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        const double x_hi = default_x_hi(model);
        const auto coarse = spectrum_check(model, default_grid(model, 1000, x_hi), 3);
        const auto fine = spectrum_check(model, default_grid(model, 2000, x_hi), 3);
        for (std::size_t n = 0; n < 3; ++n) {
            const double ratio = coarse[n].rel_error / fine[n].rel_error;
            EXPECT_GT(ratio, 3.0) << "m=" << m << " n=" << n;
            EXPECT_LT(ratio, 5.0) << "m=" << m << " n=" << n;
        }
    }
}

TEST(Gram, IdentityForEachExponent)
{
    for (double m : {0.5, 1.0, 1.5}) {
        const auto gram = gram_matrix(SemiconfinedModel(1.0, 2.0, 4.0, m), 8);
        EXPECT_EQ(gram.values.size(), 9u);
        EXPECT_TRUE(gram.unconverged.empty());
        EXPECT_LT(gram.max_deviation_from_identity(), 1e-8) << "m=" << m;
        EXPECT_GT(gram.cutoff, 0.0);
    }
}

TEST(Residual, SmallForExactStatesLargeForWrongEnergy)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.0);
    const auto grid = Grid::with_spacing(-2.0 + 2e-6, 40.0, 1e-3);
    const auto norms = residual_norms(model, grid, 4);
    ASSERT_EQ(norms.size(), 5u);
    for (double r : norms)
        EXPECT_LT(r, 1e-4);

    // the same operator applied with a shifted energy
    std::vector<double> psi(grid.n_points());
    for (std::size_t i = 0; i < psi.size(); ++i)
        psi[i] = wavefunction(model, 0, grid.point(i));
    const auto h_psi = apply_hamiltonian(model, grid, psi);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i + 1 < psi.size(); ++i) {
        if (grid.point(i) < -2.0 + 0.1)
            continue;
        const double r = h_psi[i] - 0.6 * psi[i];
        num += r * r;
        den += 0.36 * psi[i] * psi[i];
    }
    EXPECT_GT(std::sqrt(num / den), 100 * norms[0]);
}

TEST(Residual, DecaysQuadratically)
{
    for (double m : {0.5, 1.0, 1.5}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        const double x_hi = 30.0;
        const auto coarse = residual_norms(model, Grid::with_spacing(-2.0 + 2e-6, x_hi, 2e-3), 4);
        const auto fine = residual_norms(model, Grid::with_spacing(-2.0 + 2e-6, x_hi, 1e-3), 4);
        for (std::size_t n = 0; n < coarse.size(); ++n) {
            const double ratio = coarse[n] / fine[n];
            EXPECT_GT(ratio, 3.5) << "m=" << m << " n=" << n;
            EXPECT_LT(ratio, 4.5) << "m=" << m << " n=" << n;
        }
    }
}

TEST(Minimum, GoldenSectionFindsParabolaVertex)
{
    const double x = golden_section_minimize([](double s) { return (s - 1.25) * (s - 1.25) + 3.0; }, -4.0, 7.0, 1e-10);
    EXPECT_NEAR(x, 1.25, 1e-7);
}

TEST(Minimum, NumericMatchesClosedForm)
{
    for (double m : {0.5, 1.0, 1.5}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        const auto closed = potential_minimum(model);
        const auto numeric = numeric_minimum(model, default_x_hi(model));
        EXPECT_NEAR(numeric.x_min, closed.x_min, 1e-9) << "m=" << m;
        EXPECT_NEAR(numeric.v_min, closed.v_min, 1e-9) << "m=" << m;
    }
}

TEST(Report, PassesForReferenceModels)
{
    for (double m : {0.5, 1.0, 1.5}) {
        const auto report = full_report(SemiconfinedModel(1.0, 2.0, 4.0, m));
        for (const auto& check : report.checks)
            EXPECT_TRUE(check.passed) << "m=" << m << " " << check.name << " " << check.deviation;
        EXPECT_TRUE(report.all_passed());
        EXPECT_EQ(report.spectrum.size(), 4u);
        EXPECT_EQ(report.residuals.size(), 5u);
        EXPECT_EQ(report.checks.size(), 4u + 1u + 1u + 5u + 2u);
    }
}

TEST(Report, WrongOffsetFailsTheIdentity)
{
    const SemiconfinedModel model(1.0, 2.0, 4.0, 1.5);
    EXPECT_LT(pct_identity_deviation(model, PotentialVariant::closed_form, 2.0), 1e-10);
    // 0.5 w (alpha - a) = 1
    EXPECT_NEAR(pct_identity_deviation(model, PotentialVariant::a_offset, 2.0), 1.0, 1e-9);

    VerifyOptions options;
    options.variant = PotentialVariant::a_offset;
    const auto report = full_report(model, options);
    EXPECT_FALSE(report.all_passed());
    const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                                 [](const Check& c) { return c.name == "pct_identity"; });
    ASSERT_NE(it, report.checks.end());
    EXPECT_FALSE(it->passed);
}

TEST(Report, ChecksAgreeWithRecordedValues)
{
    const auto report = full_report(SemiconfinedModel(1.0, 2.0, 4.0, 1.0));
    for (const auto& check : report.checks)
        EXPECT_EQ(check.passed, check.deviation <= check.tolerance) << check.name;
    EXPECT_EQ(report.checks[4].deviation, report.gram_max_deviation);
    EXPECT_EQ(report.checks[5].deviation, report.pct_max_deviation);
    EXPECT_EQ(report.checks[0].deviation, report.spectrum[0].rel_error);
}

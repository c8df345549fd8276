// semiconf: potential curves, eigenfunctions, spectra and verification
// reports for the semiconfined position-dependent-mass oscillator family.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
// 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>

#include <CLI11.hpp>
#include <json.hpp>

#include "semiconf/io.hpp"
#include "semiconf/models.hpp"
#include "semiconf/verify.hpp"

namespace {

using namespace semiconf;
namespace fs = std::filesystem;

enum ExitCode : int { ok = 0, verification_failed = 1, invalid_parameters = 2, io_error = 3 };

struct RunConfig {
    double omega = 1.0;
    double a = 2.0;
    double alpha = 4.0;
    double m = 1.0;
    unsigned n_max = 8;
    std::size_t grid_points = 4000;
    double x_max = 0.0; // 0: command default
    std::string format;  // empty: command default
    std::string out;     // empty: stdout

    SemiconfinedModel model() const { return SemiconfinedModel(omega, a, alpha, m); }
};

// figure1 window and sampling
constexpr double figure_offset = 1e-3;
constexpr double figure_x_max = 10.0;
constexpr std::size_t figure_samples = 500;

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const RunConfig& config, const std::string& contents)
{
    if (config.out.empty()) {
        std::cout << contents;
        std::cout.flush();
        if (!std::cout)
            throw IoFailure("failed writing to stdout");
        return;
    }
    try {
        io::write_atomically(config.out, contents);
    } catch (const fs::filesystem_error& e) {
        throw IoFailure(e.what());
    }
}

std::string render(const io::Table& table, const std::string& format)
{
    if (format == "json")
        return io::to_json(table).dump(2) + "\n";
    return io::to_csv(table);
}

io::Table potential_table(const SemiconfinedModel& model, double x_lo, double x_hi, std::size_t samples)
{
    io::Table table;
    table.metadata = io::model_metadata(model);
    table.metadata.emplace_back("quantity", "potential");
    table.metadata.emplace_back("x_lo", io::format_number(x_lo));
    table.metadata.emplace_back("x_hi", io::format_number(x_hi));
    table.metadata.emplace_back("sampling", "uniform in (1+x/a)^(1-m/2)");
    table.columns = {"x", "V"};
    for (double x : io::natural_samples(model, x_lo, x_hi, samples))
        table.rows.push_back({x, potential(model, x)});
    return table;
}

int cmd_potential(const RunConfig& config, std::size_t samples)
{
    const auto model = config.model();
    const double x_hi = config.x_max > 0.0 ? config.x_max : figure_x_max;
    const double x_lo = -model.a() + figure_offset;
    if (!(x_hi > x_lo))
        throw parameter_error("--x-max must exceed -a + 1e-3");
    emit(config, render(potential_table(model, x_lo, x_hi, samples), config.format));
    return ok;
}

int cmd_wavefunction(const RunConfig& config, unsigned n, std::size_t samples)
{
    if (n > config.n_max)
        throw parameter_error("--n must not exceed --n-max");
    const auto model = config.model();
    // psi_n^2 below 1e-32 of its peak, i.e. |psi_n| below 1e-16 of its peak
    const double x_hi = config.x_max > 0.0 ? config.x_max : verify::density_cutoff(model, n, 1e-32);

    io::Table table;
    table.metadata = io::model_metadata(model);
    table.metadata.emplace_back("quantity", "wavefunction");
    table.metadata.emplace_back("n", std::to_string(n));
    table.metadata.emplace_back("x_lo", io::format_number(-model.a()));
    table.metadata.emplace_back("x_hi", io::format_number(x_hi));
    table.columns = {"x", "psi"};
    for (double x : io::natural_samples(model, -model.a(), x_hi, samples))
        table.rows.push_back({x, wavefunction(model, n, x)});
    emit(config, render(table, config.format));
    return ok;
}

int cmd_spectrum(const RunConfig& config, std::size_t k)
{
    if (k < 1)
        throw parameter_error("--k must be at least 1");
    const auto model = config.model();
    const auto grid = verify::default_grid(model, config.grid_points, config.x_max);
    if (k > grid.n_interior())
        throw parameter_error("--k exceeds the number of interior grid points");

    io::Table table;
    table.metadata = io::model_metadata(model);
    table.metadata.emplace_back("quantity", "spectrum");
    table.metadata.emplace_back("grid_points", std::to_string(grid.n_points()));
    table.metadata.emplace_back("x_lo", io::format_number(grid.x_lo()));
    table.metadata.emplace_back("x_hi", io::format_number(grid.x_hi()));
    // bisection always terminates; converged is 1 when the numeric value is finite
    table.columns = {"n", "analytic", "numeric", "rel_error", "converged"};
    for (const auto& row : verify::spectrum_check(model, grid, k))
        table.rows.push_back({static_cast<double>(row.n), row.analytic, row.numeric, row.rel_error,
                              std::isfinite(row.numeric) ? 1.0 : 0.0});
    emit(config, render(table, config.format));
    return ok;
}

int cmd_verify(const RunConfig& config)
{
    const auto model = config.model();
    verify::VerifyOptions options;
    options.grid_points = config.grid_points;
    options.x_max = config.x_max;
    options.gram_n_max = config.n_max;
    const auto report = verify::full_report(model, options);

    if (config.format == "csv")
        emit(config, io::to_csv(io::checks_table(report)));
    else
        emit(config, io::to_json(report).dump(2) + "\n");
    return report.all_passed() ? ok : verification_failed;
}

std::string m_label(double m)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", m);
    return buffer;
}

int cmd_figure1(const RunConfig& config)
{
    const fs::path dir = config.out.empty() ? fs::path("figure1") : fs::path(config.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoFailure("cannot create " + dir.string() + ": " + ec.message());

    nlohmann::json manifest;
    manifest["parameters"] = {{"omega", 1.0}, {"a", 2.0}, {"alpha", 4.0}};
    manifest["window"] = {{"x_lo", -2.0 + figure_offset}, {"x_hi", figure_x_max}};
    manifest["samples"] = figure_samples;
    manifest["sampling"] = "uniform in (1+x/a)^(1-m/2)";
    manifest["curves"] = nlohmann::json::array();

    for (double m : {0.5, 1.0, 1.5}) {
        const SemiconfinedModel model(1.0, 2.0, 4.0, m);
        const auto table = potential_table(model, -2.0 + figure_offset, figure_x_max, figure_samples);
        const std::string name = "potential_m" + m_label(m) + ".csv";
        try {
            io::write_atomically(dir / name, io::to_csv(table));
        } catch (const fs::filesystem_error& e) {
            throw IoFailure(e.what());
        }
        const auto minimum = potential_minimum(model);
        manifest["curves"].push_back(
            {{"m", m}, {"file", name}, {"x_min", minimum.x_min}, {"v_min", minimum.v_min}});
    }
    try {
        io::write_atomically(dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const fs::filesystem_error& e) {
        throw IoFailure(e.what());
    }
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Semiconfined position-dependent-mass oscillator toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    const auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("--omega", config.omega, "angular frequency")->capture_default_str();
        cmd->add_option("--a", config.a, "wall offset, the wall sits at x = -a")->capture_default_str();
        cmd->add_option("--alpha", config.alpha, "Laguerre index")->capture_default_str();
        cmd->add_option("--m", config.m, "mass exponent in (0, 2)")->capture_default_str();
        cmd->add_option("--n-max", config.n_max, "highest state index")->capture_default_str();
        cmd->add_option("--grid-points", config.grid_points, "finite-difference grid size")->capture_default_str();
        cmd->add_option("--x-max", config.x_max, "upper end of the x window (0: default)");
        cmd->add_option("--format", config.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", config.out, "output file (stdout if omitted)");
    };

    std::size_t samples = 500;
    unsigned state = 0;
    std::size_t k = 4;

    auto* potential_cmd = app.add_subcommand("potential", "tabulate V(x)");
    add_model_flags(potential_cmd);
    potential_cmd->add_option("--samples", samples, "number of rows")->capture_default_str();

    auto* wavefunction_cmd = app.add_subcommand("wavefunction", "tabulate psi_n(x)");
    add_model_flags(wavefunction_cmd);
    wavefunction_cmd->add_option("--n", state, "state index")->capture_default_str();
    wavefunction_cmd->add_option("--samples", samples, "number of rows")->capture_default_str();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "analytic vs finite-difference eigenvalues");
    add_model_flags(spectrum_cmd);
    spectrum_cmd->add_option("--k", k, "number of eigenvalues")->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "run every numerical check and emit the report");
    add_model_flags(verify_cmd);

    auto* figure_cmd = app.add_subcommand("figure1", "potential curves for m = 1/2, 1, 3/2 at w=1, a=2, alpha=4");
    figure_cmd->add_option("--out", config.out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return invalid_parameters;
    }

    try {
        if (potential_cmd->parsed()) {
            if (samples < 2)
                throw parameter_error("--samples must be at least 2");
            return cmd_potential(config, samples);
        }
        if (wavefunction_cmd->parsed()) {
            if (samples < 2)
                throw parameter_error("--samples must be at least 2");
            return cmd_wavefunction(config, state, samples);
        }
        if (spectrum_cmd->parsed())
            return cmd_spectrum(config, k);
        if (verify_cmd->parsed())
            return cmd_verify(config);
        return cmd_figure1(config);
    } catch (const parameter_error& e) {
        std::cerr << "semiconf: invalid parameters: " << e.what() << "\n";
        return invalid_parameters;
    } catch (const IoFailure& e) {
        std::cerr << "semiconf: I/O error: " << e.what() << "\n";
        return io_error;
    } catch (const convergence_error& e) {
        std::cerr << "semiconf: numerical failure: " << e.what() << "\n";
        return verification_failed;
    } catch (const overflow_error& e) {
        std::cerr << "semiconf: numerical failure: " << e.what() << "\n";
        return verification_failed;
    }
}

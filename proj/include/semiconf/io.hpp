#ifndef SEMICONF_IO_HPP
#define SEMICONF_IO_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "models.hpp"
#include "verify.hpp"

// Table and report serialization shared by the command-line tool.
//
// CSV dialect: comma separated, LF line endings, a block of `# key=value`
// metadata lines, one header row, numbers with 17 significant digits.

namespace semiconf::io {

inline std::string format_number(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string to_csv(const Table& table)
{
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + "=" + value + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out += (c ? "," : "") + table.columns[c];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + format_number(row[c]);
        out += "\n";
    }
    return out;
}

inline nlohmann::json to_json(const Table& table)
{
    nlohmann::json doc;
    for (const auto& [key, value] : table.metadata)
        doc["metadata"][key] = value;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    return doc;
}

/// Parses the CSV dialect written by to_csv.
inline Table parse_csv(const std::string& text)
{
    Table table;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        const std::string line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? text.size() : end + 1;
        if (line.empty())
            continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            table.metadata.emplace_back(line.substr(2, eq - 2), eq == std::string::npos ? "" : line.substr(eq + 1));
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        if (!header_seen) {
            table.columns = std::move(fields);
            header_seen = true;
        } else {
            std::vector<double> row;
            row.reserve(fields.size());
            for (const auto& f : fields)
                row.push_back(std::stod(f));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

inline std::vector<std::pair<std::string, std::string>> model_metadata(const SemiconfinedModel& model)
{
    return {{"omega", format_number(model.omega())},
            {"a", format_number(model.a())},
            {"alpha", format_number(model.alpha())},
            {"m", format_number(model.m())}};
}

/** `count` abscissae on [x_lo, x_hi] uniform in the natural coordinate
 *  v(x) = (2a/(2-m)) (1 + x/a)^{1-m/2}, which clusters them near the wall.
 *  x_lo may equal -a.
 */
inline std::vector<double> natural_samples(const SemiconfinedModel& model, double x_lo, double x_hi,
                                           std::size_t count)
{
    if (count < 2 || !(x_hi > x_lo) || x_lo < -model.a())
        throw parameter_error("natural_samples: need count >= 2 and -a <= x_lo < x_hi");
    const double a = model.a();
    const double gamma = 1.0 - 0.5 * model.m();
    const double v_lo = std::pow(1.0 + x_lo / a, gamma);
    const double v_hi = std::pow(1.0 + x_hi / a, gamma);
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = v_lo + (v_hi - v_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        xs[i] = a * (std::pow(v, 1.0 / gamma) - 1.0);
    }
    xs.front() = x_lo;
    xs.back() = x_hi;
    return xs;
}

inline nlohmann::json to_json(const verify::VerificationReport& report)
{
    using nlohmann::json;
    json doc;
    doc["model"] = {{"omega", report.omega}, {"a", report.a}, {"alpha", report.alpha}, {"m", report.m}};
    doc["grid"] = {{"x_lo", report.grid.x_lo()},
                   {"x_hi", report.grid.x_hi()},
                   {"n_points", report.grid.n_points()},
                   {"graded_exponent", 1.0 - 0.5 * report.m}};
    json spectrum = json::array();
    for (const auto& row : report.spectrum)
        spectrum.push_back({{"n", row.n}, {"analytic", row.analytic}, {"numeric", row.numeric}, {"rel_error", row.rel_error}});
    doc["spectrum"] = spectrum;
    doc["gram"] = {{"n_max", report.gram_n_max},
                   {"max_deviation", report.gram_max_deviation},
                   {"unconverged_entries", report.gram_unconverged}};
    doc["pct_identity"] = {{"max_deviation", report.pct_max_deviation}};
    doc["residuals"] = {{"spacing", report.residual_spacing},
                        {"wall_exclusion", report.residual_exclusion},
                        {"values", report.residuals}};
    doc["minimum"] = {{"closed_form", {{"x_min", report.closed_minimum.x_min}, {"v_min", report.closed_minimum.v_min}}},
                      {"numeric", {{"x_min", report.numeric_minimum.x_min}, {"v_min", report.numeric_minimum.v_min}}}};
    json checks = json::array();
    for (const auto& check : report.checks)
        checks.push_back({{"name", check.name},
                          {"deviation", check.deviation},
                          {"tolerance", check.tolerance},
                          {"passed", check.passed}});
    doc["checks"] = checks;
    doc["all_passed"] = report.all_passed();
    return doc;
}

inline Table checks_table(const verify::VerificationReport& report)
{
    // CSV cannot carry the check names as numbers; they go in the metadata block.
    Table table;
    table.metadata = {{"omega", format_number(report.omega)},
                      {"a", format_number(report.a)},
                      {"alpha", format_number(report.alpha)},
                      {"m", format_number(report.m)},
                      {"all_passed", report.all_passed() ? "true" : "false"}};
    table.columns = {"index", "deviation", "tolerance", "passed"};
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        const auto& c = report.checks[i];
        table.metadata.emplace_back("check" + std::to_string(i), c.name);
        table.rows.push_back({static_cast<double>(i), c.deviation, c.tolerance, c.passed ? 1.0 : 0.0});
    }
    return table;
}

/// Writes `contents` to `path` through a temporary file renamed into place.
inline void write_atomically(const std::filesystem::path& path, const std::string& contents)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::filesystem::filesystem_error("cannot open for writing", tmp,
                                                    std::make_error_code(std::errc::io_error));
        out << contents;
        out.flush();
        if (!out)
            throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
    std::filesystem::rename(tmp, path);
}

} // namespace semiconf::io

#endif // SEMICONF_IO_HPP

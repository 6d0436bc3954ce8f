#pragma once

// Experiment reports: a config echo, one row per case, growth fits and the
// pass/fail verdict, serializable as CSV or JSON.

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace csphere {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Log-log least-squares fit of norms against n.
struct GrowthFit {
    std::vector<int> n_values;
    std::vector<double> norms;
    double fitted_slope = 0.0;
    double r_squared = 0.0;
};

/// Throws std::invalid_argument unless n is strictly increasing and norms are positive.
GrowthFit fit_growth(std::vector<int> n_values, std::vector<double> norms);

/// max/min of a positive sequence.
double max_min_ratio(const std::vector<double>& values);

struct ExperimentReport {
    std::string name;
    Json config = Json::object();
    std::vector<std::string> columns;
    std::vector<Json> rows; // one object per case, keyed by columns
    Json summary = Json::object();
    double max_residual = 0.0;
    bool passed = true;

    void add_row(Json row);
    void fail(const std::string& reason);
};

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_real(double v);

/// CSV: comment lines "# schema_version=1", "# report=<name>", "# config=<json>",
/// "# summary=<json>", "# max_residual=<real>", "# passed=<bool>", then header and rows.
void write_csv(const ExperimentReport& report, std::ostream& out);

Json to_json(const ExperimentReport& report);

Json growth_to_json(const GrowthFit& fit);

} // namespace csphere

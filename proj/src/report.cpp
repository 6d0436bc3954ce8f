#include "csphere/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace csphere {

GrowthFit fit_growth(std::vector<int> n_values, std::vector<double> norms)
{
    if (n_values.size() != norms.size() || n_values.size() < 2) {
        throw std::invalid_argument("growth fit needs at least two (n, norm) pairs");
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (!(norms[i] > 0.0) || n_values[i] <= 0) {
            throw std::invalid_argument("growth fit needs positive n and norms");
        }
        if (i > 0 && n_values[i] <= n_values[i - 1]) {
            throw std::invalid_argument("growth fit needs strictly increasing n");
        }
    }
    const double count = static_cast<double>(n_values.size());
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        sx += std::log(static_cast<double>(n_values[i]));
        sy += std::log(norms[i]);
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const double dx = std::log(static_cast<double>(n_values[i])) - mx;
        const double dy = std::log(norms[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    GrowthFit fit;
    fit.fitted_slope = sxy / sxx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.n_values = std::move(n_values);
    fit.norms = std::move(norms);
    return fit;
}

double max_min_ratio(const std::vector<double>& values)
{
    if (values.empty()) {
        throw std::invalid_argument("max_min_ratio of an empty sequence");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*lo > 0.0)) {
        throw std::invalid_argument("max_min_ratio needs positive values");
    }
    return *hi / *lo;
}

void ExperimentReport::add_row(Json row)
{
    rows.push_back(std::move(row));
}

void ExperimentReport::fail(const std::string& reason)
{
    passed = false;
    if (!summary.contains("failures")) {
        summary["failures"] = Json::array();
    }
    summary["failures"].push_back(reason);
}

std::string format_real(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Json& v)
{
    switch (v.type()) {
    case Json::value_t::null:
        return "";
    case Json::value_t::boolean:
        return v.get<bool>() ? "true" : "false";
    case Json::value_t::number_integer:
        return std::to_string(v.get<long long>());
    case Json::value_t::number_unsigned:
        return std::to_string(v.get<unsigned long long>());
    case Json::value_t::number_float:
        return format_real(v.get<double>());
    case Json::value_t::string: {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
            return s;
        }
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') {
                quoted += '"';
            }
            quoted += c;
        }
        return quoted + '"';
    }
    default:
        return v.dump();
    }
}

} // namespace

void write_csv(const ExperimentReport& report, std::ostream& out)
{
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "# report=" << report.name << '\n';
    out << "# config=" << report.config.dump() << '\n';
    out << "# summary=" << report.summary.dump() << '\n';
    out << "# max_residual=" << format_real(report.max_residual) << '\n';
    out << "# passed=" << (report.passed ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << report.columns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < report.columns.size(); ++i) {
            const auto& key = report.columns[i];
            out << (i ? "," : "") << (row.contains(key) ? csv_cell(row[key]) : "");
        }
        out << '\n';
    }
}

Json to_json(const ExperimentReport& report)
{
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["report"] = report.name;
    j["config"] = report.config;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    j["summary"] = report.summary;
    j["max_residual"] = report.max_residual;
    j["passed"] = report.passed;
    return j;
}

Json growth_to_json(const GrowthFit& fit)
{
    Json j;
    j["n_values"] = fit.n_values;
    j["norms"] = fit.norms;
    j["fitted_slope"] = fit.fitted_slope;
    j["r_squared"] = fit.r_squared;
    return j;
}

} // namespace csphere

#include "tlasso/sim/experiments.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace tlasso {
namespace {

std::vector<double> finite_values(const std::vector<double>& v) {
    std::vector<double> out;
    for (double x : v) {
        if (std::isfinite(x)) out.push_back(x);
    }
    return out;
}

// Shortest text that reads back to the same double.
std::string number(double v) {
    char buf[32];
    for (int digits = 15; digits <= 17; ++digits) {
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

double ExperimentReport::mean(std::size_t method, std::size_t position) const {
    const auto v = finite_values(values.at(method).at(position));
    return v.empty() ? std::nan("") : mean_sd(v).mean;
}

double ExperimentReport::stderr_of(std::size_t method, std::size_t position) const {
    const auto v = finite_values(values.at(method).at(position));
    if (v.size() < 2) return 0.0;
    return mean_sd(v).sd / std::sqrt(static_cast<double>(v.size()));
}

std::size_t ExperimentReport::method_index(const std::string& name) const {
    for (std::size_t m = 0; m < methods.size(); ++m) {
        if (methods[m] == name) return m;
    }
    throw InvalidSpec("report has no method '" + name + "'");
}

std::string ExperimentReport::to_csv() const {
    std::string out = "method,step_or_rate,mean,stderr,trials\n";
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t k = 0; k < positions.size(); ++k) {
            out += methods[m] + "," + number(positions[k]) + "," + number(mean(m, k)) + "," + number(stderr_of(m, k)) +
                   "," + std::to_string(finite_values(values[m][k]).size()) + "\n";
        }
    }
    return out;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["metric"] = metric;
    j["position"] = position_name;
    j["config"] = config;
    j["rows"] = nlohmann::json::array();
    for (std::size_t m = 0; m < methods.size(); ++m) {
        for (std::size_t k = 0; k < positions.size(); ++k) {
            nlohmann::json row;
            row["method"] = methods[m];
            row["step_or_rate"] = positions[k];
            const double mu = mean(m, k);
            row["mean"] = std::isfinite(mu) ? nlohmann::json(mu) : nlohmann::json(nullptr);
            row["stderr"] = stderr_of(m, k);
            row["trials"] = finite_values(values[m][k]).size();
            nlohmann::json per_trial = nlohmann::json::array();
            for (double v : values[m][k]) per_trial.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
            row["values"] = per_trial;
            j["rows"].push_back(row);
        }
    }
    return j;
}

void ExperimentReport::write_csv(const std::filesystem::path& path) const { write_text(path, to_csv()); }

void ExperimentReport::write_json(const std::filesystem::path& path) const {
    write_text(path, to_json().dump(2) + "\n");
}

}  // namespace tlasso

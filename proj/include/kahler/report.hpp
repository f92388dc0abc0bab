#pragma once

/// @file report.hpp
/// @brief Residual record shared by every check suite.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kahler {

struct CheckReport {
    std::string name;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double residual_max = 0.0;
    double residual_mean = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Per-sample residuals in sample order.
    std::vector<double> details;
    /// Free-form note, e.g. the first error raised at a sample.
    std::string note;

    /// Recomputes max, mean and passed from details. NaN residuals fail.
    void finalize();
};

CheckReport make_report(std::string name, std::vector<double> residuals, double tolerance,
                        std::uint64_t seed = 0);

/// Schema fields only: name, residual_max, residual_mean, tolerance, passed, samples, seed.
nlohmann::json to_json(const CheckReport& r);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace kahler

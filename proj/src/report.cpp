#include "kahler/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kahler {

void CheckReport::finalize() {
    residual_max = 0.0;
    double sum = 0.0;
    bool nan = false;
    for (double r : details) {
        if (std::isnan(r)) nan = true;
        else residual_max = std::max(residual_max, r);
        sum += r;
    }
    residual_mean = details.empty() ? 0.0 : sum / static_cast<double>(details.size());
    if (nan) residual_max = std::numeric_limits<double>::quiet_NaN();
    passed = !nan && residual_max <= tolerance;
}

CheckReport make_report(std::string name, std::vector<double> residuals, double tolerance, std::uint64_t seed) {
    CheckReport r;
    r.name = std::move(name);
    r.samples = residuals.size();
    r.seed = seed;
    r.tolerance = tolerance;
    r.details = std::move(residuals);
    r.finalize();
    return r;
}

nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["residual_max"] = r.residual_max;
    j["residual_mean"] = r.residual_mean;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

}  // namespace kahler

#include "kahler/poly.hpp"

#include <algorithm>

namespace kahler {

QPoly divide_exact(const QPoly& a, const QPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw InexactDivision("divide_exact: nonzero remainder");
    return q;
}

RPoly divide_exact(const RPoly& a, const RPoly& b) {
    auto [q, r] = divmod(a, b);
    double scale = 0.0;
    for (double c : a.coeffs()) scale = std::max(scale, std::abs(c));
    for (double c : r.coeffs())
        if (std::abs(c) > 1e-12 * std::max(scale, 1.0))
            throw InexactDivision("divide_exact: nonzero remainder");
    return q;
}

RPoly to_float(const QPoly& p) {
    std::vector<double> v;
    for (const auto& c : p.coeffs()) v.push_back(c.get_d());
    return RPoly(std::move(v));
}

nlohmann::json to_json(const QPoly& p) {
    auto j = nlohmann::json::array();
    for (const auto& c : p.coeffs()) j.push_back(c.get_str());
    return j;
}

nlohmann::json to_json(const RPoly& p) {
    auto j = nlohmann::json::array();
    for (double c : p.coeffs()) j.push_back(c);
    return j;
}

RPoly rpoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("polynomial must be a JSON array of coefficients");
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError("polynomial coefficients must be numbers");
        v.push_back(e.get<double>());
    }
    return RPoly(std::move(v));
}

QPoly qpoly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ConfigError("polynomial must be a JSON array of coefficients");
    std::vector<mpq_class> v;
    for (const auto& e : j) {
        if (e.is_string()) {
            mpq_class q(e.get<std::string>());
            q.canonicalize();
            v.push_back(q);
        } else if (e.is_number_integer()) {
            v.emplace_back(e.get<long>());
        } else {
            throw ConfigError("exact coefficients must be integers or \"p/q\" strings");
        }
    }
    return QPoly(std::move(v));
}

}  // namespace kahler

#pragma once

/// @file model.hpp
/// @brief Coordinate-chart Kähler models evaluable at nested dual scalars.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kahler/dual.hpp"
#include "kahler/mat.hpp"
#include "kahler/poly.hpp"

namespace kahler {

/// Field groups a caller may request. Scalars xi and sigma are always filled.
enum Need : unsigned {
    kMetric = 1u,      ///< g, omega, J
    kPhi = 2u,         ///< phi
    kPotentials = 4u,  ///< u_r, G, H, Phi, kappa
};

template <class T>
struct Fields {
    Mat<T> g, omega, J, phi;  ///< J is the endomorphism J^a_b stored as J(a, b)
    Vec<T> xi;                ///< non-constant roots ξ_1..ξ_ℓ
    Vec<T> sigma;             ///< σ_0..σ_ℓ of the ξ_j
    Vec<T> u;                 ///< u_r for r = -2..ℓ, stored at r + 2
    T G{}, H{}, Phi{}, kappa{};

    const T& u_at(int r) const { return u[static_cast<size_t>(r + 2)]; }
};

struct Box {
    Vec<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Vec<double>& x) const;
    /// Box shrunk by `frac` of the width on every side.
    Box shrunk(double frac) const;
    double min_width() const;
};

struct ConstantRootInfo {
    double value = 0.0;
    int mult = 1;
    int sign = 1;          ///< orientation ε of the factor metric
    double scal = 0.0;     ///< measured scalar curvature of the signed factor metric
};

struct ModelInfo {
    std::string kind;
    int m = 0, ell = 0;
    Box box;
    RPoly p_c = RPoly::constant(1.0);
    std::vector<RPoly> F;  ///< per non-constant root; empty when not defined by the builder
    std::vector<ConstantRootInfo> roots;
    bool has_phi = false;
    bool has_potentials = false;

    int n() const { return 2 * m; }
};

class MetricModel {
public:
    virtual ~MetricModel() = default;

    virtual void eval(const Vec<D0>& x, Fields<D0>& f, unsigned need) const = 0;
    virtual void eval(const Vec<D1>& x, Fields<D1>& f, unsigned need) const = 0;
    virtual void eval(const Vec<D2>& x, Fields<D2>& f, unsigned need) const = 0;
    virtual void eval(const Vec<D3>& x, Fields<D3>& f, unsigned need) const = 0;
    virtual void eval(const Vec<D4>& x, Fields<D4>& f, unsigned need) const = 0;

    const ModelInfo& info() const { return info_; }

protected:
    ModelInfo info_;
};

using ModelPtr = std::shared_ptr<const MetricModel>;

/// Throws EvaluationOutsideDomain if the value part of x leaves the box.
void require_in_box(const Box& box, const Vec<double>& values);

template <class T>
Vec<double> values_of(const Vec<T>& x) {
    Vec<double> v;
    v.reserve(x.size());
    for (const auto& e : x) v.push_back(value(e));
    return v;
}

/// Forwards every virtual level to Derived::eval_t<T>.
template <class Derived>
class ModelBase : public MetricModel {
public:
    void eval(const Vec<D0>& x, Fields<D0>& f, unsigned need) const override { run(x, f, need); }
    void eval(const Vec<D1>& x, Fields<D1>& f, unsigned need) const override { run(x, f, need); }
    void eval(const Vec<D2>& x, Fields<D2>& f, unsigned need) const override { run(x, f, need); }
    void eval(const Vec<D3>& x, Fields<D3>& f, unsigned need) const override { run(x, f, need); }
    void eval(const Vec<D4>& x, Fields<D4>& f, unsigned need) const override { run(x, f, need); }

private:
    template <class T>
    void run(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        require_in_box(info_.box, values_of(x));
        static_cast<const Derived*>(this)->eval_t(x, f, need);
    }
};

template <class T>
Fields<T> eval_fields(const MetricModel& M, const Vec<T>& x, unsigned need) {
    Fields<T> f;
    M.eval(x, f, need);
    return f;
}

/// Seeded uniform draws from the box shrunk by 5%, rejecting points where two
/// ξ values, or a ξ value and a constant root, lie within 1e-3.
std::vector<Vec<double>> sample_points(const MetricModel& M, int count, std::uint64_t seed);

/// Model with g(i,j) and g(j,i) scaled by (1 + rel).
ModelPtr metric_bump(ModelPtr inner, int i, int j, double rel);
/// Model with the sign of J(i,j) flipped.
ModelPtr flip_j_entry(ModelPtr inner, int i, int j);

}  // namespace kahler

#include "kahler/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace kahler {

bool Box::contains(const Vec<double>& x) const {
    if (static_cast<int>(x.size()) != dim()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= lo[i] && x[i] <= hi[i])) return false;
    return true;
}

Box Box::shrunk(double frac) const {
    Box b = *this;
    for (size_t i = 0; i < lo.size(); ++i) {
        double w = hi[i] - lo[i];
        b.lo[i] += frac * w;
        b.hi[i] -= frac * w;
    }
    return b;
}

double Box::min_width() const {
    double w = INFINITY;
    for (size_t i = 0; i < lo.size(); ++i) w = std::min(w, hi[i] - lo[i]);
    return w;
}

void require_in_box(const Box& box, const Vec<double>& values) {
    if (static_cast<int>(values.size()) != box.dim()) throw Error("point dimension does not match the chart");
    for (size_t i = 0; i < values.size(); ++i)
        if (!(values[i] >= box.lo[i] && values[i] <= box.hi[i])) {
            std::ostringstream os;
            os << "coordinate " << i << " = " << values[i] << " outside [" << box.lo[i] << ", " << box.hi[i] << "]";
            throw EvaluationOutsideDomain(os.str());
        }
}

namespace {

// 53-bit uniform in [0,1) from the raw engine output, independent of the
// standard library's distribution implementation.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool degenerate(const MetricModel& M, const Vec<double>& x) {
    Fields<double> f;
    try {
        f = eval_fields(M, x, 0u);
    } catch (const EvaluationOutsideDomain&) {
        return true;
    }
    for (size_t i = 0; i < f.xi.size(); ++i) {
        for (size_t j = i + 1; j < f.xi.size(); ++j)
            if (std::abs(f.xi[i] - f.xi[j]) < 1e-3) return true;
        for (const auto& r : M.info().roots)
            if (std::abs(f.xi[i] - r.value) < 1e-3) return true;
    }
    return false;
}

}  // namespace

std::vector<Vec<double>> sample_points(const MetricModel& M, int count, std::uint64_t seed) {
    const Box b = M.info().box.shrunk(0.05);
    std::mt19937_64 rng(seed);
    std::vector<Vec<double>> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++attempts > 1000 * (count + 1)) throw Error("sampling: too many degenerate draws");
        Vec<double> x(static_cast<size_t>(b.dim()));
        for (int i = 0; i < b.dim(); ++i) x[static_cast<size_t>(i)] = b.lo[static_cast<size_t>(i)] + (b.hi[static_cast<size_t>(i)] - b.lo[static_cast<size_t>(i)]) * unit(rng);
        if (!degenerate(M, x)) out.push_back(std::move(x));
    }
    return out;
}

namespace {

class MetricBump : public ModelBase<MetricBump> {
public:
    MetricBump(ModelPtr inner, int i, int j, double rel) : inner_(std::move(inner)), i_(i), j_(j), rel_(rel) {
        info_ = inner_->info();
        info_.kind += "+bump";
    }
    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        inner_->eval(x, f, need);
        if (need & kMetric) {
            f.g(i_, j_) = f.g(i_, j_) * (1.0 + rel_);
            if (i_ != j_) f.g(j_, i_) = f.g(j_, i_) * (1.0 + rel_);
        }
    }

private:
    ModelPtr inner_;
    int i_, j_;
    double rel_;
};

class JFlip : public ModelBase<JFlip> {
public:
    JFlip(ModelPtr inner, int i, int j) : inner_(std::move(inner)), i_(i), j_(j) {
        info_ = inner_->info();
        info_.kind += "+jflip";
    }
    template <class T>
    void eval_t(const Vec<T>& x, Fields<T>& f, unsigned need) const {
        inner_->eval(x, f, need);
        if (need & kMetric) f.J(i_, j_) = -f.J(i_, j_);
    }

private:
    ModelPtr inner_;
    int i_, j_;
};

}  // namespace

ModelPtr metric_bump(ModelPtr inner, int i, int j, double rel) {
    return std::make_shared<MetricBump>(std::move(inner), i, j, rel);
}

ModelPtr flip_j_entry(ModelPtr inner, int i, int j) { return std::make_shared<JFlip>(std::move(inner), i, j); }

}  // namespace kahler

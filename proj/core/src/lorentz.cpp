#include "hmlab/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hmlab::lorentz {

RearrangedField rearrange(const std::vector<double>& values, const std::vector<double>& areas) {
    if (values.size() != areas.size())
        throw std::invalid_argument("rearrange: value/area length mismatch");
    RearrangedField rf;
    const size_t n = values.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t(0));
    std::vector<double> mag(n);
    for (size_t k = 0; k < n; ++k) mag[k] = std::fabs(values[k]);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return mag[a] > mag[b]; });
    rf.values.resize(n);
    rf.cum_measure.resize(n);
    double cum = 0.0;
    for (size_t k = 0; k < n; ++k) {
        rf.values[k] = mag[idx[k]];
        cum += areas[idx[k]];
        rf.cum_measure[k] = cum;
    }
    rf.total_measure = cum;
    return rf;
}

double l2_norm(const RearrangedField& rf) {
    double acc = 0.0;
    for (size_t k = 0; k < rf.values.size(); ++k) {
        const double a = rf.cum_measure[k] - (k ? rf.cum_measure[k - 1] : 0.0);
        acc += rf.values[k] * rf.values[k] * a;
    }
    return std::sqrt(acc);
}

double l2_weak_quasinorm(const RearrangedField& rf) {
    // m(lambda) with strict inequality {f > lambda} jumps at each distinct
    // value; the sup over lambda is attained in the limit lambda -> v_k^- where
    // the measure includes {f >= v_k}, i.e. the cumulative measure at the last
    // entry with that value.
    double sup = 0.0;
    const size_t n = rf.values.size();
    for (size_t k = 0; k < n; ++k) {
        if (k + 1 < n && rf.values[k + 1] == rf.values[k]) continue;   // not the last tie
        sup = std::max(sup, rf.values[k] * std::sqrt(rf.cum_measure[k]));
    }
    return sup;
}

double l21_norm(const RearrangedField& rf) {
    double acc = 0.0;
    const size_t n = rf.values.size();
    for (size_t k = 0; k < n; ++k) {
        if (k + 1 < n && rf.values[k + 1] == rf.values[k]) continue;
        const double next = (k + 1 < n) ? rf.values[k + 1] : 0.0;
        acc += std::sqrt(rf.cum_measure[k]) * (rf.values[k] - next);
    }
    return acc;
}

} // namespace hmlab::lorentz

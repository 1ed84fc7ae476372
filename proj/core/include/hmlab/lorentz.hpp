#pragma once

#include <vector>

#include "hmlab/field.hpp"
#include "hmlab/grid.hpp"

namespace hmlab::lorentz {

/// Decreasing rearrangement of |field| against the discrete measure given by
/// the cell areas: values[k] non-increasing, cum_measure[k] the measure of
/// {|f| >= values[k]} (non-decreasing, ending at the total area).
struct RearrangedField {
    std::vector<double> values;
    std::vector<double> cum_measure;
    double total_measure = 0.0;
};

RearrangedField rearrange(const std::vector<double>& values, const std::vector<double>& areas);

/// sqrt( sum f^2 dA )
double l2_norm(const RearrangedField& rf);
/// sup_lambda lambda * |{ |f| > lambda }|^{1/2}, levels at every value
/// (the supremum over lambda just below each distinct value is included).
double l2_weak_quasinorm(const RearrangedField& rf);
/// int_0^inf |{ |f| > s }|^{1/2} ds, exact on the step distribution.
double l21_norm(const RearrangedField& rf);

template <class Grid>
RearrangedField rearrange(const Grid& g, const Field& f) {
    std::vector<double> vals(f.v.size()), areas(f.v.size());
    for (int i = 0; i < f.nr; ++i)
        for (int j = 0; j < f.nth; ++j) {
            vals[size_t(i) * f.nth + j] = f(i, j);
            areas[size_t(i) * f.nth + j] = g.cell_area(i);
        }
    return rearrange(vals, areas);
}

template <class Grid>
double l2_norm(const Grid& g, const Field& f) { return l2_norm(rearrange(g, f)); }
template <class Grid>
double l2_weak_quasinorm(const Grid& g, const Field& f) { return l2_weak_quasinorm(rearrange(g, f)); }
template <class Grid>
double l21_norm(const Grid& g, const Field& f) { return l21_norm(rearrange(g, f)); }

} // namespace hmlab::lorentz

#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace hmlab {

/// Scalar field sampled on a structured (ring, angle) grid, ring-major.
struct Field {
    int nr = 0;     // number of rings (radial nodes)
    int nth = 0;    // number of angular nodes
    std::vector<double> v;

    Field() = default;
    Field(int nr_, int nth_, double fill = 0.0) : nr(nr_), nth(nth_), v(size_t(nr_) * nth_, fill) {}

    double& operator()(int i, int j) { return v[size_t(i) * nth + j]; }
    double operator()(int i, int j) const { return v[size_t(i) * nth + j]; }
    size_t size() const { return v.size(); }
    bool same_shape(const Field& o) const { return nr == o.nr && nth == o.nth; }

    Field& operator+=(const Field& o) {
        assert(same_shape(o));
        for (size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
        return *this;
    }
    Field& operator-=(const Field& o) {
        assert(same_shape(o));
        for (size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
        return *this;
    }
    Field& operator*=(double c) {
        for (double& x : v) x *= c;
        return *this;
    }
};

inline Field operator+(Field a, const Field& b) { a += b; return a; }
inline Field operator-(Field a, const Field& b) { a -= b; return a; }
inline Field operator*(double c, Field a) { a *= c; return a; }

/// Pair of gradient components in the local orthonormal polar frame:
/// gr = d/dr, gt = (1/r) d/dtheta. |grad f|^2 = gr^2 + gt^2.
struct Gradient {
    Field gr, gt;
};

/// R^m-valued field as separate scalar components.
struct VectorField {
    std::vector<Field> comp;
    int dims() const { return int(comp.size()); }
};

} // namespace hmlab

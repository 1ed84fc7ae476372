#include "hmlab/fdweights.hpp"

#include <algorithm>
#include <cassert>

namespace hmlab {

std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
    const int n = int(xs.size());
    assert(n > m);
    // B. Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988).
    std::vector<double> C(size_t(n) * (m + 1), 0.0);
    auto c = [&](int i, int j) -> double& { return C[size_t(i) * (m + 1) + j]; };
    double c1 = 1.0;
    c(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        double c2 = 1.0;
        const int mn = std::min(i, m);
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - (xs[i - 1] - x0) * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * (xs[i - 1] - x0) * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k)
                c(j, k) = ((xs[i] - x0) * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = (xs[i] - x0) * c(j, 0) / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = c(i, m);
    return out;
}

void StencilSet::apply(const double* in, double* out, int stride_in, int stride_out) const {
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double* wr = &w[size_t(i) * width];
        const int s = start[i];
        for (int k = 0; k < width; ++k) acc += wr[k] * in[size_t(s + k) * stride_in];
        out[size_t(i) * stride_out] = acc;
    }
}

StencilSet uniform_stencils(int n, double h, int deriv, int order) {
    StencilSet S;
    S.n = n;
    int width = order + deriv;
    if ((width - deriv) % 2 != 0) ++width;   // keep centered stencils symmetric
    width = std::min(width, n);
    S.width = width;
    S.start.resize(n);
    S.w.resize(size_t(n) * width);
    std::vector<double> xs(width);
    for (int i = 0; i < n; ++i) {
        int s = i - width / 2;
        s = std::max(0, std::min(s, n - width));
        S.start[i] = s;
        for (int k = 0; k < width; ++k) xs[k] = (s + k - i) * h;
        auto wi = fd_weights(0.0, xs, deriv);
        std::copy(wi.begin(), wi.end(), S.w.begin() + size_t(i) * width);
    }
    return S;
}

} // namespace hmlab

#include "hmlab/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace hmlab {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

RingFFT::RingFFT(int nth) : nth_(nth) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    rbuf_.resize(nth_);
    cbuf_.resize(nmodes());
    plan_fwd_ = fftw_plan_dft_r2c_1d(nth_, rbuf_.data(),
                                     reinterpret_cast<fftw_complex*>(cbuf_.data()), FFTW_MEASURE);
    plan_bwd_ = fftw_plan_dft_c2r_1d(nth_, reinterpret_cast<fftw_complex*>(cbuf_.data()),
                                     rbuf_.data(), FFTW_MEASURE);
}

RingFFT::~RingFFT() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void RingFFT::forward(const Field& f, std::vector<std::complex<double>>& spec) const {
    const int nm = nmodes();
    spec.resize(size_t(f.nr) * nm);
    std::vector<double> in(nth_);
    std::vector<std::complex<double>> out(nm);
    for (int i = 0; i < f.nr; ++i) {
        for (int j = 0; j < nth_; ++j) in[j] = f(i, j);
        fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_fwd_), in.data(),
                             reinterpret_cast<fftw_complex*>(out.data()));
        for (int k = 0; k < nm; ++k) spec[size_t(i) * nm + k] = out[k] / double(nth_);
    }
}

void RingFFT::inverse(const std::vector<std::complex<double>>& spec, Field& f) const {
    const int nm = nmodes();
    std::vector<std::complex<double>> in(nm);
    std::vector<double> out(nth_);
    for (int i = 0; i < f.nr; ++i) {
        for (int k = 0; k < nm; ++k) in[k] = spec[size_t(i) * nm + k];
        fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_bwd_),
                             reinterpret_cast<fftw_complex*>(in.data()), out.data());
        for (int j = 0; j < nth_; ++j) f(i, j) = out[j];
    }
}

void RingFFT::theta_derivative(const Field& f, Field& df) const {
    const int nm = nmodes();
    std::vector<std::complex<double>> spec;
    forward(f, spec);
    for (int i = 0; i < f.nr; ++i) {
        for (int k = 0; k < nm; ++k) {
            std::complex<double>& c = spec[size_t(i) * nm + k];
            if (2 * k == nth_)
                c = 0.0;   // Nyquist derivative is not representable; drop it
            else
                c *= std::complex<double>(0.0, double(k));
        }
    }
    df = Field(f.nr, f.nth);
    inverse(spec, df);
}

void RingFFT::theta_second_derivative(const Field& f, Field& d2f) const {
    const int nm = nmodes();
    std::vector<std::complex<double>> spec;
    forward(f, spec);
    for (int i = 0; i < f.nr; ++i)
        for (int k = 0; k < nm; ++k) spec[size_t(i) * nm + k] *= -double(k) * double(k);
    d2f = Field(f.nr, f.nth);
    inverse(spec, d2f);
}

} // namespace hmlab

#pragma once

#include <complex>
#include <vector>

#include "hmlab/field.hpp"

namespace hmlab {

/// Batched real FFT over the angular index of a ring-major field.
/// Spectra are stored per ring as nth/2+1 complex coefficients with the
/// forward normalization 1/nth (so coefficient 0 is the angular mean).
class RingFFT {
public:
    explicit RingFFT(int nth);
    ~RingFFT();
    RingFFT(const RingFFT&) = delete;
    RingFFT& operator=(const RingFFT&) = delete;

    int nth() const { return nth_; }
    int nmodes() const { return nth_ / 2 + 1; }

    /// rows of `f` -> spectra, one row of nmodes() coefficients per ring.
    void forward(const Field& f, std::vector<std::complex<double>>& spec) const;
    void inverse(const std::vector<std::complex<double>>& spec, Field& f) const;

    /// d/dtheta via spectral multiplication (Nyquist mode derivative set to 0).
    void theta_derivative(const Field& f, Field& df) const;
    /// d^2/dtheta^2 via spectral multiplication.
    void theta_second_derivative(const Field& f, Field& d2f) const;

private:
    int nth_;
    void* plan_fwd_;   // fftw_plan
    void* plan_bwd_;
    mutable std::vector<double> rbuf_;
    mutable std::vector<std::complex<double>> cbuf_;
};

} // namespace hmlab

#pragma once

#include <complex>
#include <vector>

namespace gts {

using cplx = std::complex<double>;

// In-place radix-2 FFT; size must be a power of two.
void fft(std::vector<cplx>& a, bool inverse);

// Map FFT bin index to signed harmonic number (k > N/2 means k - N).
inline int fft_harmonic(int k, int n) { return (2 * k <= n) ? k : k - n; }

// Real periodic function of one variable held as a trigonometric series.
// Built from uniform samples over one period; exact for band-limited data.
class FourierProfile {
public:
    FourierProfile() = default;
    FourierProfile(double period, std::vector<cplx> spectrum);

    static FourierProfile from_samples(double period, const std::vector<double>& samples);

    double period() const { return period_; }
    int size() const { return static_cast<int>(coef_.size()); }
    double mean() const { return coef_.empty() ? 0.0 : coef_[0].real(); }
    const std::vector<cplx>& spectrum() const { return coef_; }

    double operator()(double x) const;
    std::vector<double> resample(int n) const;

    FourierProfile derivative() const;
    // Antiderivative normalized to zero mean; the input mean is dropped.
    FourierProfile antiderivative() const;

    // |c_n| for n = 1..N/2-1, used for decay-rate fits.
    std::vector<double> harmonic_amplitudes() const;

private:
    double period_ = 1.0;
    std::vector<cplx> coef_;  // full FFT layout, already divided by N
};

// Least-squares fit of log|c_n| ~ log M + n log q over harmonics with
// |c_n| > floor.  Returns q (decay ratio per harmonic).
double fit_decay_ratio(const std::vector<double>& amplitudes, double floor = 1e-13);

}  // namespace gts

#include "gts/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gts {

void fft(std::vector<cplx>& a, bool inverse) {
    const int n = static_cast<int>(a.size());
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft size must be a power of two");
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (int len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * std::numbers::pi / len * (inverse ? 1 : -1);
        cplx wlen(std::cos(ang), std::sin(ang));
        for (int i = 0; i < n; i += len) {
            cplx w(1.0);
            for (int j = 0; j < len / 2; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= static_cast<double>(n);
}

FourierProfile::FourierProfile(double period, std::vector<cplx> spectrum)
    : period_(period), coef_(std::move(spectrum)) {}

FourierProfile FourierProfile::from_samples(double period, const std::vector<double>& samples) {
    std::vector<cplx> a(samples.begin(), samples.end());
    fft(a, false);
    for (auto& c : a) c /= static_cast<double>(samples.size());
    return FourierProfile(period, std::move(a));
}

double FourierProfile::operator()(double x) const {
    const int n = size();
    const double w = 2.0 * std::numbers::pi / period_;
    double acc = coef_[0].real();
    for (int k = 1; k < n; ++k) {
        int h = fft_harmonic(k, n);
        if (2 * k == n) {
            acc += coef_[k].real() * std::cos(w * h * x);  // Nyquist, cosine only
            continue;
        }
        if (h < 0) continue;  // covered by the conjugate term
        cplx e(std::cos(w * h * x), std::sin(w * h * x));
        acc += 2.0 * (coef_[k] * e).real();
    }
    return acc;
}

std::vector<double> FourierProfile::resample(int n) const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = (*this)(period_ * i / n);
    return out;
}

FourierProfile FourierProfile::derivative() const {
    const int n = size();
    const double w = 2.0 * std::numbers::pi / period_;
    std::vector<cplx> c(coef_);
    for (int k = 0; k < n; ++k) {
        if (2 * k == n) {
            c[k] = 0.0;
            continue;
        }
        c[k] *= cplx(0.0, w * fft_harmonic(k, n));
    }
    return FourierProfile(period_, std::move(c));
}

FourierProfile FourierProfile::antiderivative() const {
    const int n = size();
    const double w = 2.0 * std::numbers::pi / period_;
    std::vector<cplx> c(coef_);
    c[0] = 0.0;
    for (int k = 1; k < n; ++k) {
        if (2 * k == n) {
            c[k] = 0.0;
            continue;
        }
        c[k] /= cplx(0.0, w * fft_harmonic(k, n));
    }
    return FourierProfile(period_, std::move(c));
}

std::vector<double> FourierProfile::harmonic_amplitudes() const {
    const int n = size();
    std::vector<double> amp;
    for (int k = 1; k < n / 2; ++k) amp.push_back(std::abs(coef_[k]));
    return amp;
}

double fit_decay_ratio(const std::vector<double>& amplitudes, double floor) {
    // Linear regression of log amplitude against harmonic index.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < amplitudes.size(); ++i) {
        if (amplitudes[i] <= floor) continue;
        double x = static_cast<double>(i + 1);
        double y = std::log(amplitudes[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 3) return 0.0;
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return std::exp(slope);
}

}  // namespace gts

#include "gts/model.hpp"

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"

namespace gts {

double TrigPoly::eval(double t, double period) const {
    double w = 2.0 * std::numbers::pi / period;
    double acc = mean;
    for (const auto& h : harmonics)
        acc += h.cos_coeff * std::cos(h.j * w * t) + h.sin_coeff * std::sin(h.j * w * t);
    return acc;
}

int TrigPoly::max_harmonic() const {
    int m = 0;
    for (const auto& h : harmonics) m = std::max(m, h.j);
    return m;
}

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

using CoeffMap = std::map<std::pair<int, int>, TrigPoly>;

double eval_series(const CoeffMap& coeffs, double t, double x, double y, double period) {
    double acc = 0.0;
    for (const auto& [mn, tp] : coeffs)
        acc += tp.eval(t, period) * ipow(x, mn.first) * ipow(y, mn.second);
    return acc;
}

double eval_series_mean(const CoeffMap& coeffs, double x, double y) {
    double acc = 0.0;
    for (const auto& [mn, tp] : coeffs) acc += tp.mean * ipow(x, mn.first) * ipow(y, mn.second);
    return acc;
}

double eval_series_dx(const CoeffMap& coeffs, double t, double x, double y, double period) {
    double acc = 0.0;
    for (const auto& [mn, tp] : coeffs) {
        if (mn.first == 0) continue;
        acc += tp.eval(t, period) * mn.first * ipow(x, mn.first - 1) * ipow(y, mn.second);
    }
    return acc;
}

double eval_series_dy(const CoeffMap& coeffs, double t, double x, double y, double period) {
    double acc = 0.0;
    for (const auto& [mn, tp] : coeffs) {
        if (mn.second == 0) continue;
        acc += tp.eval(t, period) * mn.second * ipow(x, mn.first) * ipow(y, mn.second - 1);
    }
    return acc;
}

}  // namespace

double Perturbation::eval_x(double t, double x, double y, double period) const {
    return eval_series(x_coeffs, t, x, y, period);
}
double Perturbation::eval_y(double t, double x, double y, double period) const {
    return eval_series(y_coeffs, t, x, y, period);
}
double Perturbation::eval_x_dx(double t, double x, double y, double period) const {
    return eval_series_dx(x_coeffs, t, x, y, period);
}
double Perturbation::eval_x_dy(double t, double x, double y, double period) const {
    return eval_series_dy(x_coeffs, t, x, y, period);
}
double Perturbation::eval_y_dx(double t, double x, double y, double period) const {
    return eval_series_dx(y_coeffs, t, x, y, period);
}
double Perturbation::eval_y_dy(double t, double x, double y, double period) const {
    return eval_series_dy(y_coeffs, t, x, y, period);
}
double Perturbation::eval_x_mean(double x, double y) const {
    return eval_series_mean(x_coeffs, x, y);
}
double Perturbation::eval_y_mean(double x, double y) const {
    return eval_series_mean(y_coeffs, x, y);
}

int Perturbation::max_time_harmonic() const {
    int m = 0;
    for (const auto& [mn, tp] : x_coeffs) m = std::max(m, tp.max_harmonic());
    for (const auto& [mn, tp] : y_coeffs) m = std::max(m, tp.max_harmonic());
    return m;
}

void Perturbation::validate() const {
    for (const auto& [mn, tp] : x_coeffs)
        if (mn.first < 0 || mn.second < 0 || mn.first + mn.second > degree_bound)
            throw Error("perturbation x coefficient outside degree bound");
    for (const auto& [mn, tp] : y_coeffs)
        if (mn.first < 0 || mn.second < 0 || mn.first + mn.second > degree_bound)
            throw Error("perturbation y coefficient outside degree bound");
}

void SystemSpec::validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0)) throw Error("gamma must be in (0, 1]");
    if (!(T > 0.0)) throw Error("period T must be positive");
    if (nu != 0 && nu != 1) throw Error("nu must be 0 or 1");
    if (!(sigma > std::sqrt(1.0 + 1.0 / std::sqrt(gamma))))
        throw Error("sigma must exceed sqrt(1 + gamma^(-1/2))");
    if (eps_max < 0.0) throw Error("eps_max must be nonnegative");
    perturbation.validate();
    first_order.validate();
    if (autonomous) {
        for (const auto& [mn, tp] : perturbation.x_coeffs)
            if (!tp.is_constant()) throw Error("autonomous spec has a time-dependent X coefficient");
        for (const auto& [mn, tp] : perturbation.y_coeffs)
            if (!tp.is_constant()) throw Error("autonomous spec has a time-dependent Y coefficient");
    }
}

std::string to_string(CycleClass c) {
    switch (c) {
        case CycleClass::ZeroInner: return "0i";
        case CycleClass::ZeroOuter: return "0e";
        case CycleClass::One: return "1";
        case CycleClass::Two: return "2";
    }
    return "?";
}

double hamiltonian_level(double C, double S, double gamma) {
    double u = C * C - 1.0, v = S * S - 1.0;
    return u * u + gamma * v * v;
}

std::pair<double, double> unperturbed_field(double C, double S, double gamma) {
    return {gamma * (S * S * S - S), -(C * C * C - C)};
}

std::pair<double, double> perturbed_field(double t, double x, double y, double eps,
                                          const SystemSpec& spec) {
    if (std::abs(x) > spec.sigma || std::abs(y) > spec.sigma)
        throw DomainExceeded("point outside the sigma box");
    double X = spec.perturbation.eval_x(t, x, y, spec.T) +
               eps * spec.first_order.eval_x(t, x, y, spec.T);
    double Y = spec.perturbation.eval_y(t, x, y, spec.T) +
               eps * spec.first_order.eval_y(t, x, y, spec.T);
    double fx = spec.gamma * (y * y * y - y) + X * eps;
    double fy = -(x * x * x - x) + Y * eps;
    double common = (spec.nu == 1) ? eps : 1.0;
    return {fx * common, fy * common};
}

double separatrix_r_s(double gamma) { return std::sqrt(1.0 + std::sqrt(gamma)); }
double separatrix_l_s(double gamma) { return std::sqrt(1.0 - std::sqrt(gamma)); }
double separatrix_r_i(double gamma) { return std::sqrt(1.0 - std::sqrt(1.0 - gamma)); }
double separatrix_r_e(double gamma) { return std::sqrt(1.0 + std::sqrt(1.0 - gamma)); }
double separatrix_u_e(double gamma) { return std::sqrt(1.0 + 1.0 / std::sqrt(gamma)); }

double r_sigma(double gamma, double sigma) {
    return std::sqrt(1.0 + std::sqrt(gamma * sigma * sigma * (sigma * sigma - 2.0)));
}

double level_for_seed(const Seed& seed, double gamma) {
    double u = seed.b * seed.b - 1.0;
    return (1 - std::abs(seed.l)) * gamma + u * u;
}

CycleClass classify(const Seed& seed, double gamma, double sigma) {
    if (seed.k < -1 || seed.k > 1 || seed.l < -1 || seed.l > 1 ||
        (seed.k == 0 && seed.l != 0))
        throw InvalidSeed("(k,l) must be one of the five admissible centers");
    int cls = std::abs(seed.k) + std::abs(seed.l);
    double kb = seed.k == 0 ? seed.b : seed.k * seed.b;
    switch (cls) {
        case 0: {
            if (seed.b > 0.0 && seed.b < separatrix_r_i(gamma)) return CycleClass::ZeroInner;
            double hi = std::isfinite(sigma) ? r_sigma(gamma, sigma)
                                             : std::numeric_limits<double>::infinity();
            if (seed.b > separatrix_r_e(gamma) && seed.b < hi) return CycleClass::ZeroOuter;
            throw InvalidSeed("class-0 abscissa outside (0,r^i) and (r^e,r^sigma)");
        }
        case 1:
            if (kb > 1.0 && kb < separatrix_r_e(gamma)) return CycleClass::One;
            throw InvalidSeed("class-1 abscissa outside (1, r^e)");
        case 2:
            if (kb > 1.0 && kb < separatrix_r_s(gamma)) return CycleClass::Two;
            throw InvalidSeed("class-2 abscissa outside (1, r^s)");
    }
    throw InvalidSeed("unreachable seed class");
}

Extremals extremals(const Seed& seed, double gamma, double sigma) {
    CycleClass cls = classify(seed, gamma, sigma);
    Extremals e;
    e.r_s = separatrix_r_s(gamma);
    e.l_s = separatrix_l_s(gamma);
    e.r_i = separatrix_r_i(gamma);
    e.r_e = separatrix_r_e(gamma);
    e.u_e = separatrix_u_e(gamma);
    double a = level_for_seed(seed, gamma);
    e.a = a;
    switch (cls) {
        case CycleClass::ZeroInner:
            e.u0_0i = std::sqrt(1.0 - std::sqrt((a - 1.0) / gamma));
            break;
        case CycleClass::ZeroOuter:
            e.r0_1e = std::sqrt(1.0 + std::sqrt(a));
            e.u0_1e = std::sqrt(1.0 + std::sqrt(a / gamma));
            e.u0_0e = std::sqrt(1.0 + std::sqrt((a - 1.0) / gamma));
            break;
        case CycleClass::One:
            e.l1_0 = std::sqrt(2.0 - seed.b * seed.b);
            e.l1_1 = std::sqrt(1.0 - std::sqrt(a));
            e.r1_1 = std::sqrt(1.0 + std::sqrt(a));
            e.u1_1 = std::sqrt(1.0 + std::sqrt(a / gamma));
            break;
        case CycleClass::Two:
            e.l2_1 = std::sqrt(1.0 - std::sqrt(a));
            e.r2_1 = std::sqrt(1.0 + std::sqrt(a));
            e.lo2_1 = std::sqrt(1.0 - std::sqrt(a / gamma));
            e.u2_1 = std::sqrt(1.0 + std::sqrt(a / gamma));
            break;
    }
    return e;
}

}  // namespace gts

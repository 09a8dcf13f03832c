#include "gts/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "gts/errors.hpp"

namespace gts {

AlphaProfile alpha(const CycleParam& cycle) {
    AlphaProfile prof;
    prof.seed = cycle.seed;
    const int n = cycle.size();
    prof.alpha_samples.resize(n);
    int n_pos = 0, n_neg = 0;
    double min_abs = 1e300;
    for (int i = 0; i < n; ++i) {
        double v = cycle.dC_samples[i] * (cycle.S_samples[i] - cycle.seed.l) -
                   (cycle.C_samples[i] - cycle.seed.k) * cycle.dS_samples[i];
        prof.alpha_samples[i] = v;
        if (v > 0) ++n_pos;
        if (v < 0) ++n_neg;
        min_abs = std::min(min_abs, std::abs(v));
    }
    prof.min_abs = min_abs;
    if (n_pos == n) prof.sign = SignClass::Positive;
    else if (n_neg == n) prof.sign = SignClass::Negative;
    else prof.sign = SignClass::Mixed;
    return prof;
}

std::vector<double> alpha_prime(const CycleParam& cycle) {
    const int n = cycle.size();
    const double g = cycle.gamma;
    const int k = cycle.seed.k, l = cycle.seed.l;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double C = cycle.C_samples[i], S = cycle.S_samples[i];
        double s3 = S * S * S - S, c3 = C * C * C - C;
        out[i] = g * (s3 * (2.0 * C - 3.0 * k * C * C + k) - c3 * (2.0 * S - 3.0 * l * S * S + l));
    }
    return out;
}

double gamma_star() { return (51.0 * std::sqrt(17.0) - 107.0) / 128.0; }
double c_star() { return (std::sqrt(17.0) - 1.0) / 8.0; }

double b_star() {
    double cs = c_star();
    double inner = (cs * cs - 1.0) * (cs - 1.0) - gamma_star() / 2.0;
    return std::sqrt(1.0 + std::sqrt(inner));
}

double gamma_tilde(double C) { return 4.0 * C * (C * C - 1.0) * (C - 1.0); }

namespace {

// Golden-section maximization of f on [a, b].
template <typename F>
std::pair<double, double> golden_max(F f, double a, double b) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + r * (b - a); f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - r * (b - a); f1 = f(x1);
        }
    }
    double x = 0.5 * (a + b);
    return {x, f(x)};
}

double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        double m = 0.5 * (a + b), fm = f(m);
        if (fa * fm <= 0.0) b = m;
        else { a = m; fa = fm; }
    }
    return 0.5 * (a + b);
}

// Roots theta of the quadratic from the class-1 zero-set analysis; b = sqrt(1+sqrt(theta)).
std::optional<double> b_branch(double C, double gamma, int sign) {
    double A = (C * C - 1.0) * (C - 1.0);
    double disc = 0.25 * gamma * (gamma - gamma_tilde(C));
    if (disc < 0.0) return std::nullopt;
    double theta = A - 0.5 * gamma + sign * std::sqrt(disc);
    if (theta < 0.0) return std::nullopt;
    return std::sqrt(1.0 + std::sqrt(theta));
}

}  // namespace

std::pair<double, double> scan_gamma_tilde_max(double grid_step) {
    // The contact analysis needs the hump on (0, 1); beyond C = 1 the zero
    // set is empty and the function just grows.
    double best_c = 0.0, best = -1e300;
    for (double C = 0.0; C <= 1.0; C += grid_step) {
        double v = gamma_tilde(C);
        if (v > best) { best = v; best_c = C; }
    }
    auto [c, v] = golden_max(gamma_tilde, std::max(0.0, best_c - grid_step),
                             std::min(1.0, best_c + grid_step));
    return {c, v};
}

Class1Region class1_region(double gamma, double grid_step) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw GammaOutOfRange("class1_region needs gamma in (0,1)");
    Class1Region reg;
    reg.gamma = gamma;
    reg.gamma_star = gamma_star();
    if (gamma <= 0.8) {
        auto [bd, bu] = practical_bounds(gamma);
        reg.b_d = bd;
        reg.b_u = bu;
        reg.b_d_printed = practical_bounds_printed(gamma).first;
    }
    if (gamma >= reg.gamma_star) return reg;  // no sign-definite window beyond gamma_*

    // Contact abscissas: gamma_tilde(C) = gamma on either side of its maximum.
    double cs = c_star();
    auto g_c = [&](double C) { return gamma_tilde(C) - gamma; };
    double c1 = bisect(g_c, 1e-9, cs);
    double c2 = bisect(g_c, cs, 1.0 - 1e-9);

    // b_m: minimum of the lower branch over (0, c1].
    double best_c = c1, best_v = 1e300;
    for (double C = grid_step; C <= c1; C += grid_step) {
        auto b = b_branch(C, gamma, -1);
        if (b && *b < best_v) { best_v = *b; best_c = C; }
    }
    if (auto b = b_branch(c1, gamma, -1); b && *b < best_v) { best_v = *b; best_c = c1; }
    auto neg_bm = [&](double C) {
        auto b = b_branch(C, gamma, -1);
        return b ? -*b : -1e300;
    };
    auto [cm, vm] = golden_max(neg_bm, std::max(1e-12, best_c - grid_step),
                               std::min(c1, best_c + grid_step));
    reg.b_m = std::min(best_v, -vm);

    // b_p: maximum of the upper branch over [c2, 1).
    best_c = c2;
    best_v = -1e300;
    for (double C = c2; C < 1.0; C += grid_step) {
        auto b = b_branch(C, gamma, +1);
        if (b && *b > best_v) { best_v = *b; best_c = C; }
    }
    auto pos_bp = [&](double C) {
        auto b = b_branch(C, gamma, +1);
        return b ? *b : -1e300;
    };
    auto [cp, vp] = golden_max(pos_bp, std::max(c2, best_c - grid_step),
                               std::min(1.0 - 1e-12, best_c + grid_step));
    reg.b_p = std::max(best_v, vp);
    return reg;
}

std::pair<double, double> practical_bounds(double gamma) {
    if (!(gamma > 0.0 && gamma <= 0.8)) throw GammaOutOfRange("practical bounds need gamma in (0, 0.8]");
    double s = std::sqrt(0.8 - gamma);
    return {1.15 - 0.16 * s, 1.15 + 0.28 * s};
}

std::pair<double, double> practical_bounds_printed(double gamma) {
    if (!(gamma > 0.0 && gamma <= 0.8)) throw GammaOutOfRange("practical bounds need gamma in (0, 0.8]");
    double s = std::sqrt(0.8 - gamma);
    return {1.15 - s, 1.15 + 0.28 * s};
}

}  // namespace gts

#pragma once

#include <optional>
#include <vector>

#include "gts/orbit.hpp"

namespace gts {

enum class SignClass { Positive, Negative, Mixed };

// Samples of alpha = C'(S-l) - (C-k)S' along a cycle, with its sign class
// and the minimum modulus (the alpha_* constant of the radial averaging).
struct AlphaProfile {
    Seed seed;
    std::vector<double> alpha_samples;
    double min_abs = 0.0;
    SignClass sign = SignClass::Mixed;
};

// Admissible class-1 abscissa region for a given gamma.
struct Class1Region {
    double gamma = 0.0;
    double gamma_star = 0.0;
    std::optional<double> b_p;  // lower edge of the computed region
    std::optional<double> b_m;  // upper edge of the computed region
    double b_d = 0.0;           // conservative inner bounds (see practical_bounds)
    double b_u = 0.0;
    double b_d_printed = 0.0;   // the alternative closed form; kept for reporting
};

AlphaProfile alpha(const CycleParam& cycle);

// Samples of the derivative of alpha along the flow.
std::vector<double> alpha_prime(const CycleParam& cycle);

// Closed-form constants of the class-1 exclusion analysis.
double gamma_star();                    // (51 sqrt(17) - 107) / 128
double c_star();                        // (sqrt(17) - 1) / 8
double b_star();                        // common value of b_-(C*) and b_+(C*)
double gamma_tilde(double C);           // 4 C (C^2 - 1)(C - 1)
// Grid-scanned maximum of gamma_tilde over [0, sqrt(2)], refined.
std::pair<double, double> scan_gamma_tilde_max(double grid_step = 1e-3);

Class1Region class1_region(double gamma, double grid_step = 1e-3);

// Conservative class-1 abscissa bounds (b_d, b_u).  Uses the coefficient
// that matches the worked numerics (b_d = 1.15 - 0.16 sqrt(0.8-gamma));
// the variant without the 0.16 factor is available separately.
std::pair<double, double> practical_bounds(double gamma);
std::pair<double, double> practical_bounds_printed(double gamma);

}  // namespace gts

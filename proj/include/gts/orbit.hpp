#pragma once

#include <limits>
#include <vector>

#include "gts/model.hpp"

namespace gts {

// Sampled periodic solution (C, S) of the unperturbed system through
// (b, l), on a uniform grid of the angular variable.
struct CycleParam {
    Seed seed;
    double gamma = 0.5;
    double a = 0.0;      // conserved level of the cycle
    double omega = 0.0;  // period
    std::vector<double> phi_grid;
    std::vector<double> C_samples, S_samples;
    std::vector<double> dC_samples, dS_samples;

    int size() const { return static_cast<int>(phi_grid.size()); }
};

// S branches of the level equation as functions of C^2:
//   S_pm = sqrt(1 +- gamma^(-1/2) sqrt(a - (Csq-1)^2)).
double s_branch(double Csq, double a, double gamma, int sign);

// Period via the class-specific singular quadrature formulas.
double period_quadrature(const Seed& seed, double gamma, double rel_tol = 1e-10);

// Period via direct integration with section-return event detection.
// Independent of the quadrature route.
double period_return_map(const Seed& seed, double gamma);

// Dense parametrization on n_samples uniform angular points (power of two).
CycleParam parametrize(const Seed& seed, double gamma, int n_samples = 1024,
                       double sigma = std::numeric_limits<double>::infinity());

// The class-specific J moment integrals of the reduction of the averaged
// perturbation; m, n are the reduced indices.
double moment_integral(const Seed& seed, double gamma, int m, int n,
                       double rel_tol = 1e-10);

}  // namespace gts

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gts {

// One real, T-periodic coefficient: mean plus a finite list of harmonics.
struct TrigHarmonic {
    int j = 1;  // multiple of the base frequency, j >= 1
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

struct TrigPoly {
    double mean = 0.0;
    std::vector<TrigHarmonic> harmonics;

    double eval(double t, double period) const;
    int max_harmonic() const;
    bool is_constant() const { return harmonics.empty(); }
};

// Polynomial perturbation pair (X, Y) with trig-poly time coefficients:
//   X(t,x,y) = sum over (m,n) of x_coeffs[(m,n)](t) x^m y^n, same for Y.
struct Perturbation {
    std::map<std::pair<int, int>, TrigPoly> x_coeffs;
    std::map<std::pair<int, int>, TrigPoly> y_coeffs;
    int degree_bound = 3;

    double eval_x(double t, double x, double y, double period) const;
    double eval_y(double t, double x, double y, double period) const;
    // Exact partial derivatives from the coefficient table.
    double eval_x_dx(double t, double x, double y, double period) const;
    double eval_x_dy(double t, double x, double y, double period) const;
    double eval_y_dx(double t, double x, double y, double period) const;
    double eval_y_dy(double t, double x, double y, double period) const;
    // Evaluation with every coefficient replaced by its mean.
    double eval_x_mean(double x, double y) const;
    double eval_y_mean(double x, double y) const;

    int max_time_harmonic() const;
    bool empty() const { return x_coeffs.empty() && y_coeffs.empty(); }
    void validate() const;
};

struct SystemSpec {
    double gamma = 0.5;
    double T = 6.283185307179586476925286766559;  // 2*pi
    int nu = 0;                                   // 0 slow time, 1 fast time
    double sigma = 2.5;                           // analyticity radius
    double eps_max = 0.1;
    Perturbation perturbation;           // X0, Y0
    Perturbation first_order;            // X1, Y1 (default zero)
    bool autonomous = false;

    void validate() const;
};

struct Seed {
    int k = 0;  // -1, 0, 1
    int l = 0;  // -1, 0, 1, with (k,l) != (0,+-1)
    double b = 0.0;
};

enum class CycleClass { ZeroInner, ZeroOuter, One, Two };

std::string to_string(CycleClass c);

// Separatrix constants and the per-cycle turning values that exist for the
// seed's class; absent values are left empty.
struct Extremals {
    double r_s = 0, l_s = 0, r_i = 0, r_e = 0, u_e = 0;
    double a = 0;
    std::optional<double> r0_1e, u0_1e;          // class 0e
    std::optional<double> u0_0i, u0_0e;          // class 0 ordinate turning values
    std::optional<double> l1_0, l1_1, r1_1, u1_1;  // class 1
    std::optional<double> l2_1, lo2_1, r2_1, u2_1; // class 2
};

// (C^2-1)^2 + gamma (S^2-1)^2, the conserved level of the unperturbed flow.
double hamiltonian_level(double C, double S, double gamma);

// Right-hand side of the unperturbed system: (gamma(S^3-S), -(C^3-C)).
std::pair<double, double> unperturbed_field(double C, double S, double gamma);

// Right-hand side of the full system, common factor eps^nu applied.
std::pair<double, double> perturbed_field(double t, double x, double y, double eps,
                                          const SystemSpec& spec);

double separatrix_r_s(double gamma);
double separatrix_l_s(double gamma);
double separatrix_r_i(double gamma);
double separatrix_r_e(double gamma);
double separatrix_u_e(double gamma);
// Outer admissibility radius for class 0e; depends on the analyticity radius.
double r_sigma(double gamma, double sigma);

double level_for_seed(const Seed& seed, double gamma);

CycleClass classify(const Seed& seed, double gamma,
                    double sigma = std::numeric_limits<double>::infinity());

Extremals extremals(const Seed& seed, double gamma,
                    double sigma = std::numeric_limits<double>::infinity());

}  // namespace gts

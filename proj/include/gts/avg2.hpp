#pragma once

#include <optional>

#include "gts/transform.hpp"

namespace gts {

// Finite scan report for the small-denominator condition
// |m omega + n T| > vartheta (|m|+|n|)^(-tau).
struct SiegelReport {
    double omega = 0.0, T = 0.0;
    int N_max = 0;
    double tau = 1.0;
    double worst_margin = 0.0;  // min |m omega + n T| (|m|+|n|)^tau over the scan
    int worst_m = 0, worst_n = 0;
    double vartheta_fit = 0.0;
    bool pass = false;  // heuristic: the scan is necessarily finite
};

// Double trigonometric series of a real two-periodic function; exact
// evaluation anywhere, in particular at the period seams.
struct Spectrum2 {
    double T = 1.0, omega = 1.0;
    int Nt = 0, Nphi = 0;
    std::vector<cplx> coef;  // FFT bin layout, already normalized

    static Spectrum2 from_field(const TwoPeriodicField& f);
    TwoPeriodicField to_field() const;
    double operator()(double t, double phi) const;
};

struct TransportSolution {
    TwoPeriodicField chi;
    Spectrum2 chi_series;
    double residual_max = 0.0;
    int n_harmonics = 0;
    double coeff_decay_rate = 0.0;  // fitted per-harmonic amplitude ratio
};

enum class Stability { ForwardStable, BackwardStable };

struct Nondegeneracy {
    double K = 0.0;
    int nu = 0;
    bool autonomous_scaling = false;  // K integrated over the period, not averaged
    Stability stability = Stability::ForwardStable;
};

// Secondary averaging data.  Every component is stored in the uniform split
// value = bar + hat(phi) + tilde(t, phi).
struct SecondaryFields {
    int nu = 0;
    double K = 0.0;
    double g_bar = 0.0;
    FourierProfile g_hat;
    TwoPeriodicField g_tilde;
    std::optional<Spectrum2> g_tilde_series;  // exact evaluator (nu = 0 path)
    FourierProfile h_hat;
    TwoPeriodicField h_tilde;
    FourierProfile f_hat;
    TwoPeriodicField f_tilde;
    double theta_bar = 0.0;
    FourierProfile delta_hat;
    TwoPeriodicField delta_tilde;
    double transport_residual = 0.0;  // worst residual among the transport solves

    // Full g = g_bar + g_hat(phi) + g_tilde(t,phi), exact in both variables.
    double g_total(double t, double phi) const;
};

SiegelReport siegel_check(double omega, double T, int N_max = 200, double tau = 1.0);

// Unique two-periodic solution of d_t(chi) + d_phi(chi) = eta_tilde with zero
// double mean, truncated at n_harmonics in the angular direction.  The input
// must have zero t-average at each phi.
TransportSolution solve_transport(const TwoPeriodicField& eta_tilde, int n_harmonics = 0);

SecondaryFields secondary_fields(const PullbackSet& pb, const PolarCoeffs& coeffs, int nu,
                                 std::optional<double> K = std::nullopt,
                                 int n_harmonics = 0);

Nondegeneracy k_constant(const PullbackSet& pb, const PolarCoeffs& coeffs,
                         const SecondaryFields& secondary, int nu);

// The autonomous-convention constant: the same integrand as nu = 1 but
// integrated over the period instead of averaged.
Nondegeneracy k_constant_autonomous(const PullbackSet& pb, const PolarCoeffs& coeffs);

}  // namespace gts

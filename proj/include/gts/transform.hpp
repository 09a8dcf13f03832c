#pragma once

#include <functional>
#include <vector>

#include "gts/fourier.hpp"
#include "gts/monotone.hpp"
#include "gts/orbit.hpp"

namespace gts {

// Real function of (t, phi), T-periodic in t and omega-periodic in phi,
// sampled on a uniform Nt x Nphi grid (t varies over rows).
struct TwoPeriodicField {
    double T = 1.0, omega = 1.0;
    int Nt = 0, Nphi = 0;
    std::vector<double> samples;         // row-major, samples[it*Nphi + jp]
    double mean = 0.0;                   // double average
    std::vector<double> t_mean_profile;  // average over t at each phi

    static TwoPeriodicField build(double T, double omega, int Nt, int Nphi,
                                  const std::function<double(double, double)>& f);
    static TwoPeriodicField zeros(double T, double omega, int Nt, int Nphi);

    double at(int it, int jp) const { return samples[it * Nphi + jp]; }
    double& at(int it, int jp) { return samples[it * Nphi + jp]; }
    double t_of(int it) const { return T * it / Nt; }
    double phi_of(int jp) const { return omega * jp / Nphi; }

    void refresh_means();

    // Zero-mean phi profile of the t-average (the "hat" part).
    std::vector<double> hat_profile() const;
    // Samples minus the t-average at each phi (the "tilde" part).
    TwoPeriodicField tilde() const;

    double max_abs() const;
};

double field_mean(const TwoPeriodicField& f);
double product_mean(const TwoPeriodicField& f, const TwoPeriodicField& g);
// Mean of f(t,phi) * w(phi) over the grid.
double product_mean(const TwoPeriodicField& f, const std::vector<double>& w);

TwoPeriodicField d_phi(const TwoPeriodicField& f);   // spectral phi derivative
TwoPeriodicField d_t(const TwoPeriodicField& f);     // spectral t derivative
// Antiderivative in t at fixed phi, normalized to zero t-mean; input must
// have zero t-mean at each phi.
TwoPeriodicField anti_t(const TwoPeriodicField& f);

// Coefficient functions of the special polar system along a cycle, plus the
// admissible radii of the polar and averaging changes.
struct PolarCoeffs {
    Seed seed;
    double gamma = 0.0;
    double omega = 0.0;
    std::vector<double> alpha_samples, alpha_prime_samples;
    std::vector<double> p, q, p_breve, q_breve;
    double rho_star = 0.0;
    double r_star = 0.0;
    double alpha_star = 0.0;     // min |alpha|
    double beta_star_max = 0.0;  // max |beta|
};

// Radial averaging data: xi, its mean (provably zero), and beta.
struct BetaData {
    std::vector<double> xi_samples;
    double xi_mean = 0.0;
    std::vector<double> beta_samples;
    FourierProfile beta_series;
};

// The order-(r, eps) pullback fields of the perturbation on the cycle.
struct PullbackSet {
    TwoPeriodicField R0;    // radial forcing at r = 0
    TwoPeriodicField Phi0;  // angular forcing at r = 0
    TwoPeriodicField Rr;    // r-derivative of the radial forcing at r = 0
    TwoPeriodicField Reps;  // eps-derivative of the radial forcing at r = 0
};

PolarCoeffs polar_coeffs(const CycleParam& cycle, const AlphaProfile& alpha,
                         const SystemSpec& spec);

BetaData beta_data(const CycleParam& cycle, const PolarCoeffs& coeffs);

PullbackSet pullbacks(const CycleParam& cycle, const AlphaProfile& alpha,
                      const BetaData& beta, const SystemSpec& spec, int Nt = 16);

// Full radial right-hand side R(t, phi_j, r, eps) of the averaged system at
// grid index jp; used to validate the r-derivative assembly.
double radial_rhs(const CycleParam& cycle, const PolarCoeffs& coeffs, const BetaData& beta,
                  const SystemSpec& spec, double t, int jp, double r, double eps);

// dr/dphi of the unperturbed flow written in the averaged radial variable,
// evaluated at (phi_j, r); its r^2 Taylor coefficient must vanish.
double unperturbed_radial_rate(const CycleParam& cycle, const PolarCoeffs& coeffs,
                               const BetaData& beta, int jp, double r);

}  // namespace gts

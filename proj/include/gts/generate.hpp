#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gts/avg2.hpp"

namespace gts {

// Which nondegeneracy convention a run asks for.
enum class NuMode { Slow, Fast, Autonomous };

NuMode default_nu_mode(const SystemSpec& spec);
std::string to_string(NuMode m);

// All data derived from one seed; built once and shared by the later stages.
struct Pipeline {
    SystemSpec spec;
    Seed seed;
    CycleParam cycle;
    AlphaProfile alpha_profile;
    PolarCoeffs coeffs;
    BetaData beta;
    PullbackSet pulls;

    static Pipeline build(const SystemSpec& spec, const Seed& seed, int n_samples = 1024,
                          int Nt = 16);

    SecondaryFields secondary(int nu, int n_harmonics = 0) const;
    Nondegeneracy k(NuMode mode, int n_harmonics = 0) const;
};

// Reduced moment data of the averaged radial forcing.
struct MomentTable {
    Seed seed;
    CycleClass cls;
    std::map<std::pair<int, int>, double> J;  // class-specific arc integrals
    std::map<std::pair<int, int>, double> P;  // combined mean coefficients
};

struct AdmissibleRoot {
    Seed seed;  // b holds the solved abscissa
    CycleClass cls = CycleClass::ZeroOuter;
    double omega_star = 0.0;
    std::optional<Nondegeneracy> K;
    std::optional<SiegelReport> siegel;
    std::pair<double, double> bracket{0.0, 0.0};
    bool admissible = false;
    bool tangential = false;
    std::vector<std::string> reasons;
    double rbar_residual = 0.0;  // |direct average at the root|
};

// Combined mean coefficients of the reduction, P(m,n) for n >= 1.
std::map<std::pair<int, int>, double> mean_coefficients(const Perturbation& pert);

MomentTable moment_table(const Seed& seed, const SystemSpec& spec);

// Average of the radial forcing along the cycle, two independent routes.
double rbar_direct(const Seed& seed, const SystemSpec& spec, int n_samples = 1024);
double rbar_moments(const Seed& seed, const SystemSpec& spec);

struct FindRootsOptions {
    double grid = 1e-3;
    std::optional<CycleClass> class_filter;
    std::optional<NuMode> nu_mode;       // default: derived from the spec
    double outer_cap = 1e300;            // user cap on the class-0e scan
    int n_samples = 1024;
    bool run_battery = true;             // K/Siegel checks per root
};

std::vector<AdmissibleRoot> find_roots(const SystemSpec& spec, const FindRootsOptions& opts = {});

// First-order invariant-surface point for a solved root.
std::pair<double, double> torus_first_order(const Pipeline& pipe, const SecondaryFields& secondary,
                                            double eps, double t, double phi);

}  // namespace gts

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gts/generate.hpp"
#include "gts/ode.hpp"

namespace gts {

enum class TimeDirection { Forward, Backward };

enum class StopReason { ReachedEnd, DomainLeft };

struct Trajectory {
    std::vector<double> t, x, y;  // states at accepted steps, t physical
    StopReason stop = StopReason::ReachedEnd;

    double t_end() const { return t.empty() ? 0.0 : t.back(); }
};

// Integrate the perturbed system from (t0, x0, y0) to t_end (either time
// direction).  Stops early, with a flag, if the trajectory leaves the
// sigma box.
Trajectory integrate(const SystemSpec& spec, double eps, double t0, double x0, double y0,
                     double t_end, const OdeOptions& opts = {});

struct CrossingTable {
    double section_level = 0.0;  // y = 0, +1 or -1
    std::string side;            // "left" or "right" of the predicted cycle
    std::vector<std::pair<double, double>> rows;  // (t, x)
    TimeDirection direction = TimeDirection::Forward;
};

// Successive oriented crossings of the horizontal section by the trajectory
// started at `start`; rows are kept from the point where the crossing
// abscissas contract monotonically.
CrossingTable crossing_table(const SystemSpec& spec, double eps, std::pair<double, double> start,
                             double section_level, int n_rows, TimeDirection direction);

struct LimitCycleBracket {
    Seed seed;
    double eps = 0.0;
    CrossingTable inner_table, outer_table;
    double located_x = 0.0;
    bool stable = false;  // forward-time stability
};

LimitCycleBracket bracket_cycle(const AdmissibleRoot& root, const SystemSpec& spec, double eps,
                                const Pipeline* pipe = nullptr);

struct EquilibriumResult {
    std::vector<std::pair<double, double>> points;
    std::vector<std::string> failures;  // per-seed Newton failures, non-fatal
};

EquilibriumResult equilibria(const SystemSpec& spec, double eps);

struct PortraitOptions {
    double xmin = -2.2, xmax = 2.2, ymin = -2.2, ymax = 2.2;
    int width = 800, height = 800;
    bool include_cycles = true;
    bool include_equilibria = true;
    double t_span = 40.0;  // integration span per launch
};

struct Portrait {
    std::string svg;
    std::string csv;
};

Portrait portrait(const SystemSpec& spec, double eps,
                  const std::vector<std::pair<double, double>>& launches,
                  const PortraitOptions& opts = {});

// Bundled demonstration systems: a periodic perturbation whose averaged
// part is the three-term cubic, and its autonomous counterpart.
SystemSpec demo_periodic_spec(int nu);
SystemSpec demo_autonomous_spec();
// The autonomous cubic pair derived from the equivariant family; lambda is
// the linear coefficient parameter.
SystemSpec demo_cubic_pair_spec(double lambda);

struct RootCheckRow {
    Seed seed;
    CycleClass cls = CycleClass::ZeroOuter;
    double b = 0.0, omega = 0.0;
    std::pair<double, double> b_interval{0, 0}, omega_interval{0, 0};
    bool b_ok = false, omega_ok = false;
    std::optional<double> K0, K1, Ka;
    double K0_ref = 0.0, K1_ref = 0.0, Ka_ref = 0.0;
    bool K_ok = false;
};

struct Lemma81Report {
    std::vector<RootCheckRow> rows;
    bool roots_count_ok = false;
    bool all_pass = false;
};

// Full pipeline over the demonstration system: roots, periods and K
// constants checked against their reference windows.
Lemma81Report repro_lemma81(bool with_slow_K = true);

struct BracketOutcome {
    Seed seed;
    bool converged = false;
    double located_x = 0.0;
    bool stable = false;
    bool stability_matches_K = false;
};

struct Theorem81aReport {
    double eps = 0.0;
    std::vector<BracketOutcome> outcomes;
    int n_converged = 0;
};

Theorem81aReport repro_theorem81a(double eps);

}  // namespace gts

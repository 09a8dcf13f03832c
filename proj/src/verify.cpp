#include "gts/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/ode.hpp"

namespace gts {

namespace {

// Same right-hand side without the sigma-box guard; the box is checked at
// step granularity so that leaving it stops a run instead of throwing from
// inside a trial stage.
std::pair<double, double> raw_field(double t, double x, double y, double eps,
                                    const SystemSpec& spec) {
    double X = spec.perturbation.eval_x(t, x, y, spec.T) +
               eps * spec.first_order.eval_x(t, x, y, spec.T);
    double Y = spec.perturbation.eval_y(t, x, y, spec.T) +
               eps * spec.first_order.eval_y(t, x, y, spec.T);
    double fx = spec.gamma * (y * y * y - y) + X * eps;
    double fy = -(x * x * x - x) + Y * eps;
    double common = (spec.nu == 1) ? eps : 1.0;
    return {fx * common, fy * common};
}

// Field in the integration variable s.  Backward runs integrate the
// time-reversed field forward in s = -t, keeping one code path.
Rhs2 directed_rhs(const SystemSpec& spec, double eps, TimeDirection dir) {
    if (dir == TimeDirection::Forward) {
        return [spec, eps](double t, const State2& v) -> State2 {
            auto [fx, fy] = raw_field(t, v[0], v[1], eps, spec);
            return {fx, fy};
        };
    }
    return [spec, eps](double s, const State2& v) -> State2 {
        auto [fx, fy] = raw_field(-s, v[0], v[1], eps, spec);
        return {-fx, -fy};
    };
}

bool in_box(const SystemSpec& spec, const State2& v) {
    return std::abs(v[0]) <= spec.sigma && std::abs(v[1]) <= spec.sigma;
}

}  // namespace

Trajectory integrate(const SystemSpec& spec, double eps, double t0, double x0, double y0,
                     double t_end, const OdeOptions& opts) {
    if (!in_box(spec, {x0, y0})) throw DomainExceeded("start outside the sigma box");
    TimeDirection dir = (t_end >= t0) ? TimeDirection::Forward : TimeDirection::Backward;
    double s0 = (dir == TimeDirection::Forward) ? t0 : -t0;
    double s1 = (dir == TimeDirection::Forward) ? t_end : -t_end;
    Rhs2 rhs = directed_rhs(spec, eps, dir);

    Trajectory tr;
    Dop853 solver(rhs, s0, {x0, y0}, opts);
    auto push = [&]() {
        tr.t.push_back(dir == TimeDirection::Forward ? solver.t() : -solver.t());
        tr.x.push_back(solver.y()[0]);
        tr.y.push_back(solver.y()[1]);
    };
    push();
    bool more = true;
    while (more) {
        more = solver.step_toward(s1);
        push();
        if (!in_box(spec, solver.y())) {
            tr.stop = StopReason::DomainLeft;
            return tr;
        }
    }
    return tr;
}

namespace {

struct CrossingScanner {
    Rhs2 rhs;
    OdeOptions opts;
    double level;
    double orient = 0.0;  // sign of dy/ds at accepted crossings
    const SystemSpec* spec = nullptr;

    CrossingScanner(Rhs2 r, double lvl, const SystemSpec& sp, double s0, const State2& v0)
        : rhs(std::move(r)), level(lvl), spec(&sp), solver_(rhs, s0, v0, OdeOptions{}) {
        s_prev_ = s0;
        y_prev_ = v0;
    }

    // Advance to the next oriented crossing; nullopt when the trajectory
    // leaves the domain, blows up, or exceeds the span cap.
    std::optional<std::pair<double, double>> next(double s_cap) {
        auto g = [&](const State2& v) { return v[1] - level; };
        while (solver_.t() < s_cap) {
            try {
                solver_.step_toward(s_cap);
            } catch (const StepFail&) {
                return std::nullopt;
            }
            if (!std::isfinite(solver_.y()[0]) || !std::isfinite(solver_.y()[1])) return std::nullopt;
            if (std::abs(solver_.y()[0]) > spec->sigma || std::abs(solver_.y()[1]) > spec->sigma)
                return std::nullopt;
            double s_here = solver_.t();
            State2 y_here = solver_.y();
            if (!armed_) {
                // Crossings count only after the trajectory has left the
                // section band, so a start on the section is not an event.
                if (std::abs(g(y_here)) > 0.02) armed_ = true;
                s_prev_ = s_here;
                y_prev_ = y_here;
                continue;
            }
            bool crossed = g(y_prev_) * g(y_here) <= 0.0 && g(y_prev_) != g(y_here);
            if (crossed) {
                double ta = s_prev_, tb = s_here;
                State2 ya = y_prev_;
                for (int it = 0; it < 60 && (tb - ta) > 1e-12 * std::max(1.0, std::abs(tb)); ++it) {
                    double tm = 0.5 * (ta + tb);
                    State2 ym = integrate_to(rhs, ta, ya, tm, opts);
                    if (g(ya) * g(ym) <= 0.0) tb = tm;
                    else { ta = tm; ya = ym; }
                }
                double tc = 0.5 * (ta + tb);
                State2 yc = integrate_to(rhs, ta, ya, tc, opts);
                double dy = rhs(tc, yc)[1];
                s_prev_ = s_here;
                y_prev_ = y_here;
                armed_ = false;
                if (orient == 0.0) orient = (dy >= 0) ? 1.0 : -1.0;
                if (dy * orient > 0.0) return std::pair{tc, yc[0]};
                continue;
            }
            s_prev_ = s_here;
            y_prev_ = y_here;
        }
        return std::nullopt;
    }

    double now() const { return solver_.t(); }

private:
    Dop853 solver_;
    double s_prev_ = 0.0;
    State2 y_prev_{0.0, 0.0};
    bool armed_ = false;
};

}  // namespace

CrossingTable crossing_table(const SystemSpec& spec, double eps, std::pair<double, double> start,
                             double section_level, int n_rows, TimeDirection direction) {
    CrossingTable tbl;
    tbl.section_level = section_level;
    tbl.direction = direction;

    CrossingScanner scan(directed_rhs(spec, eps, direction), section_level, spec, 0.0,
                         {start.first, start.second});
    // If the start sits on the section, fix the crossing orientation there.
    if (std::abs(start.second - section_level) < 1e-12) {
        double dy = scan.rhs(0.0, {start.first, start.second})[1];
        scan.orient = (dy >= 0) ? 1.0 : -1.0;
        tbl.rows.emplace_back(0.0, start.first);
    }
    int want = n_rows * 5;
    double s_cap = 40.0 * std::max(1.0, static_cast<double>(want));
    std::vector<std::pair<double, double>> crossings;
    while (static_cast<int>(crossings.size()) < want) {
        auto c = scan.next(s_cap);
        if (!c) break;
        crossings.push_back(*c);
    }

    // Keep the first window of n_rows crossings with monotone abscissas and
    // non-increasing consecutive gaps.
    int need = n_rows - static_cast<int>(tbl.rows.size());
    auto monotone_from = [&](int i0) {
        if (i0 + need > static_cast<int>(crossings.size())) return false;
        double last_dx = 0.0;
        for (int i = i0; i + 1 < i0 + need; ++i) {
            double dx = crossings[i + 1].second - crossings[i].second;
            if (i > i0) {
                if (dx * last_dx < 0.0) return false;
                if (i > i0 + 2 && std::abs(dx) > std::abs(last_dx) * 1.05 + 1e-15) return false;
            }
            last_dx = dx;
        }
        return true;
    };
    int start_idx = -1;
    for (int i = 0; i + need <= static_cast<int>(crossings.size()); ++i) {
        if (monotone_from(i)) {
            start_idx = i;
            break;
        }
    }
    if (start_idx < 0) throw NotMonotone("crossing abscissas never contract");
    double tsign = (direction == TimeDirection::Forward) ? 1.0 : -1.0;
    for (int i = start_idx; i < start_idx + need; ++i)
        tbl.rows.emplace_back(tsign * crossings[i].first, crossings[i].second);
    return tbl;
}

LimitCycleBracket bracket_cycle(const AdmissibleRoot& root, const SystemSpec& spec, double eps,
                                const Pipeline* pipe_in) {
    if (!root.K) throw Error("bracket_cycle needs a root with a computed K");
    LimitCycleBracket br;
    br.seed = root.seed;
    br.eps = eps;
    double K = root.K->K;
    TimeDirection dir = (K < 0) ? TimeDirection::Forward : TimeDirection::Backward;

    double delta = 5e-3;
    std::optional<Pipeline> local;
    const Pipeline* pipe = pipe_in;
    if (!pipe) {
        local = Pipeline::build(spec, root.seed);
        pipe = &*local;
    }
    SecondaryFields sf = pipe->secondary(spec.autonomous ? 1 : spec.nu);
    auto [xs, ys] = torus_first_order(*pipe, sf, eps, 0.0, 0.0);
    delta = std::max(delta, 3.0 * std::abs(xs - root.seed.b));

    double level = root.seed.l;
    double toward_center = (root.seed.b - root.seed.k > 0) ? -1.0 : 1.0;
    double x_in = root.seed.b + toward_center * delta;
    double x_out = root.seed.b - toward_center * delta;

    // Displacement of the oriented section-return map; its zero is the cycle.
    auto displacement = [&](double x, TimeDirection d) {
        CrossingScanner scan(directed_rhs(spec, eps, d), level, spec, 0.0, {x, level});
        scan.orient = (scan.rhs(0.0, {x, level})[1] >= 0) ? 1.0 : -1.0;
        auto c = scan.next(200.0);
        if (!c) throw NotConverged("no section return near the predicted cycle");
        return c->second - x;
    };

    double fa = displacement(x_in, dir);
    double fb = displacement(x_out, dir);
    // In the contracting time direction the two spirals must move toward
    // each other; otherwise there is no cycle inside the bracket.
    double inward = (x_out - x_in);
    if (!(fa * inward > 0.0 && fb * inward < 0.0))
        throw NotConverged("crossing tables do not bracket a cycle");
    double a = x_in, b = x_out;
    for (int it = 0; it < 80 && std::abs(b - a) > 1e-11; ++it) {
        double m = 0.5 * (a + b);
        double fm = displacement(m, dir);
        if (fa * fm <= 0.0) { b = m; fb = fm; }
        else { a = m; fa = fm; }
    }
    br.located_x = 0.5 * (a + b);

    // Independent stability measurement from forward-time displacements.
    double h = std::max(1e-4, 0.02 * delta);
    double dlo = displacement(br.located_x - h, TimeDirection::Forward);
    double dhi = displacement(br.located_x + h, TimeDirection::Forward);
    if (dlo > 0.0 && dhi < 0.0) br.stable = true;
    else if (dlo < 0.0 && dhi > 0.0) br.stable = false;
    else throw NotConverged("ambiguous stability near the located cycle");

    try {
        br.inner_table = crossing_table(spec, eps, {x_in, level}, level, 9, dir);
        br.inner_table.side = toward_center < 0 ? "left" : "right";
        br.outer_table = crossing_table(spec, eps, {x_out, level}, level, 9, dir);
        br.outer_table.side = toward_center < 0 ? "right" : "left";
    } catch (const NotMonotone&) {
        throw NotConverged("no contracting spirals near the located cycle");
    }
    return br;
}

EquilibriumResult equilibria(const SystemSpec& spec, double eps) {
    if (!spec.autonomous) throw Error("equilibrium search needs an autonomous spec");
    EquilibriumResult res;
    const double g = spec.gamma;
    auto F = [&](double x, double y) {
        double X = spec.perturbation.eval_x_mean(x, y) + eps * spec.first_order.eval_x_mean(x, y);
        double Y = spec.perturbation.eval_y_mean(x, y) + eps * spec.first_order.eval_y_mean(x, y);
        return std::pair{g * (y * y * y - y) + eps * X, -(x * x * x - x) + eps * Y};
    };
    auto J = [&](double x, double y) {
        double Xx = spec.perturbation.eval_x_dx(0, x, y, spec.T);
        double Xy = spec.perturbation.eval_x_dy(0, x, y, spec.T);
        double Yx = spec.perturbation.eval_y_dx(0, x, y, spec.T);
        double Yy = spec.perturbation.eval_y_dy(0, x, y, spec.T);
        return std::array<double, 4>{eps * Xx, g * (3 * y * y - 1) + eps * Xy,
                                     -(3 * x * x - 1) + eps * Yx, eps * Yy};
    };
    const std::pair<double, double> seeds[9] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                                {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (auto [x0, y0] : seeds) {
        double x = x0, y = y0;
        bool ok = false;
        for (int it = 0; it < 100; ++it) {
            auto [f1, f2] = F(x, y);
            double fn = std::hypot(f1, f2);
            if (fn < 1e-13) { ok = true; break; }
            auto j = J(x, y);
            double det = j[0] * j[3] - j[1] * j[2];
            if (std::abs(det) < 1e-14) break;
            double dx = (f1 * j[3] - f2 * j[1]) / det;
            double dy = (j[0] * f2 - j[2] * f1) / det;
            double lambda = 1.0;
            for (int h = 0; h < 40; ++h) {
                auto [g1, g2] = F(x - lambda * dx, y - lambda * dy);
                if (std::hypot(g1, g2) < fn) break;
                lambda *= 0.5;
            }
            x -= lambda * dx;
            y -= lambda * dy;
        }
        if (ok) res.points.emplace_back(x, y);
        else res.failures.push_back("no convergence from (" + std::to_string(x0) + "," +
                                    std::to_string(y0) + ")");
    }
    return res;
}

SystemSpec demo_periodic_spec(int nu) {
    const double tau0 = -3.314, tau1 = -0.361, tau2 = 4.493;
    SystemSpec spec;
    spec.gamma = 0.5;
    spec.T = 2.0 * std::numbers::pi;
    spec.nu = nu;
    spec.sigma = 2.5;  // sigma^2 > 6
    spec.eps_max = 0.05;
    spec.autonomous = false;
    spec.perturbation.degree_bound = 3;
    spec.perturbation.x_coeffs[{0, 0}] = TrigPoly{0.0, {{1, 1.0, 0.0}}};  // cos t
    spec.perturbation.y_coeffs[{0, 0}] = TrigPoly{0.0, {{1, 0.0, tau0 + tau2}}};
    spec.perturbation.y_coeffs[{0, 1}] = TrigPoly{tau0, {}};
    spec.perturbation.y_coeffs[{0, 3}] = TrigPoly{tau1, {}};
    spec.perturbation.y_coeffs[{2, 1}] = TrigPoly{tau2, {}};
    return spec;
}

SystemSpec demo_autonomous_spec() {
    SystemSpec spec = demo_periodic_spec(0);
    spec.autonomous = true;
    spec.perturbation.x_coeffs.clear();
    spec.perturbation.y_coeffs[{0, 0}] = TrigPoly{0.0, {}};
    return spec;
}

SystemSpec demo_cubic_pair_spec(double lambda) {
    const double c = 1.0 / std::sqrt(2.0);
    SystemSpec spec;
    spec.gamma = 0.5;
    spec.T = 2.0 * std::numbers::pi;
    spec.nu = 0;
    spec.sigma = 2.5;
    spec.autonomous = true;
    spec.perturbation.degree_bound = 3;
    spec.perturbation.x_coeffs[{3, 0}] = TrigPoly{-3.0 * c, {}};
    spec.perturbation.x_coeffs[{1, 2}] = TrigPoly{0.5 * c, {}};
    spec.perturbation.x_coeffs[{1, 0}] = TrigPoly{-lambda * c, {}};
    spec.perturbation.y_coeffs[{2, 1}] = TrigPoly{-3.0 * c, {}};
    spec.perturbation.y_coeffs[{0, 3}] = TrigPoly{0.5 * c, {}};
    spec.perturbation.y_coeffs[{0, 1}] = TrigPoly{-lambda * c, {}};
    return spec;
}

namespace {

struct ReferenceRow {
    int k, l;
    double b_lo, b_hi;
    double w_lo, w_hi;
    double K0_ref, K1_ref, Ka_ref;
};

// Reference windows for the demonstration system (class by class).
const ReferenceRow kDemoRefs[4] = {
    {0, 0, 1.795, 1.815, 3.81, 3.94, 2.78, 2.79, 10.7},
    {1, 0, 1.118, 1.148, 13.25, 14.05, -0.34, -0.32, -4.3},
    {1, 1, 1.266, 1.276, 5.99, 6.29, -0.29, -0.05, -0.28},
    {1, 1, 1.299, 1.303, 7.72, 8.49, 2.07, 0.10, 0.83},
};

const ReferenceRow* match_reference(const Seed& seed) {
    double kb = (seed.k == 0) ? seed.b : seed.k * seed.b;
    for (const auto& r : kDemoRefs) {
        if (std::abs(seed.k) != std::abs(r.k) || std::abs(seed.l) != std::abs(r.l)) continue;
        if (kb > r.b_lo - 5e-3 && kb < r.b_hi + 5e-3) return &r;
    }
    return nullptr;
}

}  // namespace

Lemma81Report repro_lemma81(bool with_slow_K) {
    SystemSpec spec = demo_periodic_spec(0);
    FindRootsOptions opts;
    opts.nu_mode = NuMode::Slow;
    opts.run_battery = false;
    auto roots = find_roots(spec, opts);

    Lemma81Report rep;
    rep.roots_count_ok = (roots.size() == 11);
    bool all = rep.roots_count_ok;
    for (const auto& root : roots) {
        RootCheckRow row;
        row.seed = root.seed;
        row.cls = root.cls;
        row.b = root.seed.b;
        row.omega = root.omega_star;
        const ReferenceRow* ref = match_reference(root.seed);
        if (ref) {
            row.b_interval = {ref->b_lo, ref->b_hi};
            row.omega_interval = {ref->w_lo, ref->w_hi};
            double kb = (root.seed.k == 0) ? root.seed.b : root.seed.k * root.seed.b;
            row.b_ok = kb > ref->b_lo && kb < ref->b_hi;
            row.omega_ok = row.omega > ref->w_lo && row.omega < ref->w_hi;
            row.K0_ref = ref->K0_ref;
            row.K1_ref = ref->K1_ref;
            row.Ka_ref = ref->Ka_ref;
        }
        Pipeline pipe = Pipeline::build(spec, root.seed);
        row.K1 = pipe.k(NuMode::Fast).K;
        row.Ka = pipe.k(NuMode::Autonomous).K;
        if (with_slow_K) row.K0 = pipe.k(NuMode::Slow).K;
        bool k_ok = ref != nullptr;
        if (ref) {
            k_ok = std::abs(*row.K1 - row.K1_ref) <= 0.05;
            if (row.K0) k_ok = k_ok && std::abs(*row.K0 - row.K0_ref) <= 0.05;
            k_ok = k_ok && std::abs(*row.Ka - row.Ka_ref) <= 0.10 * std::abs(row.Ka_ref);
        }
        row.K_ok = k_ok;
        all = all && row.b_ok && row.omega_ok && row.K_ok;
        rep.rows.push_back(row);
    }
    rep.all_pass = all;
    return rep;
}

Theorem81aReport repro_theorem81a(double eps) {
    SystemSpec spec = demo_autonomous_spec();
    FindRootsOptions opts;
    opts.nu_mode = NuMode::Autonomous;
    auto roots = find_roots(spec, opts);

    Theorem81aReport rep;
    rep.eps = eps;
    for (const auto& root : roots) {
        BracketOutcome oc;
        oc.seed = root.seed;
        if (!root.K) continue;
        try {
            auto br = bracket_cycle(root, spec, eps);
            oc.converged = true;
            oc.located_x = br.located_x;
            oc.stable = br.stable;
            oc.stability_matches_K = (br.stable == (root.K->K < 0));
            ++rep.n_converged;
        } catch (const NotConverged&) {
            oc.converged = false;
        }
        rep.outcomes.push_back(oc);
    }
    return rep;
}

}  // namespace gts

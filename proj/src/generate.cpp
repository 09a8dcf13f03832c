#include "gts/generate.hpp"

#include <algorithm>
#include <cmath>

#include "gts/errors.hpp"

namespace gts {

NuMode default_nu_mode(const SystemSpec& spec) {
    if (spec.autonomous) return NuMode::Autonomous;
    return spec.nu == 1 ? NuMode::Fast : NuMode::Slow;
}

std::string to_string(NuMode m) {
    switch (m) {
        case NuMode::Slow: return "0";
        case NuMode::Fast: return "1";
        case NuMode::Autonomous: return "auto";
    }
    return "?";
}

Pipeline Pipeline::build(const SystemSpec& spec, const Seed& seed, int n_samples, int Nt) {
    spec.validate();
    Pipeline p;
    p.spec = spec;
    p.seed = seed;
    p.cycle = parametrize(seed, spec.gamma, n_samples, spec.sigma);
    p.alpha_profile = alpha(p.cycle);
    p.coeffs = polar_coeffs(p.cycle, p.alpha_profile, spec);
    p.beta = beta_data(p.cycle, p.coeffs);
    int Nt_needed = 2 * std::max(spec.perturbation.max_time_harmonic(),
                                 spec.first_order.max_time_harmonic()) + 2;
    p.pulls = pullbacks(p.cycle, p.alpha_profile, p.beta, spec, std::max(Nt, Nt_needed));
    return p;
}

SecondaryFields Pipeline::secondary(int nu, int n_harmonics) const {
    return secondary_fields(pulls, coeffs, nu, std::nullopt, n_harmonics);
}

Nondegeneracy Pipeline::k(NuMode mode, int n_harmonics) const {
    switch (mode) {
        case NuMode::Fast: {
            SecondaryFields sf = secondary(1);
            return k_constant(pulls, coeffs, sf, 1);
        }
        case NuMode::Slow: {
            SecondaryFields sf = secondary(0, n_harmonics);
            return k_constant(pulls, coeffs, sf, 0);
        }
        case NuMode::Autonomous:
            return k_constant_autonomous(pulls, coeffs);
    }
    throw Error("unreachable");
}

std::map<std::pair<int, int>, double> mean_coefficients(const Perturbation& pert) {
    std::map<std::pair<int, int>, double> P;
    for (const auto& [mn, tp] : pert.y_coeffs) {
        if (mn.second >= 1 && tp.mean != 0.0) P[mn] += tp.mean;
    }
    for (const auto& [mn, tp] : pert.x_coeffs) {
        // X(m,n) feeds P(m-1, n+1) with weight m/(n+1).
        if (mn.first >= 1 && tp.mean != 0.0) {
            int m = mn.first - 1, n = mn.second + 1;
            P[{m, n}] += static_cast<double>(mn.first) / n * tp.mean;
        }
    }
    for (auto it = P.begin(); it != P.end();) {
        if (it->second == 0.0) it = P.erase(it);
        else ++it;
    }
    return P;
}

MomentTable moment_table(const Seed& seed, const SystemSpec& spec) {
    MomentTable mt;
    mt.seed = seed;
    mt.cls = classify(seed, spec.gamma, spec.sigma);
    mt.P = mean_coefficients(spec.perturbation);
    for (const auto& [mn, pval] : mt.P) {
        int mp = mn.first, np = mn.second;
        int jm = -1, jn = -1;
        switch (mt.cls) {
            case CycleClass::ZeroInner:
            case CycleClass::ZeroOuter:
                if (mp % 2 != 0 || np % 2 != 1) continue;
                jm = mp / 2;
                jn = (np - 1) / 2;
                break;
            case CycleClass::One:
                if (np % 2 != 1) continue;
                jm = mp;
                jn = (np - 1) / 2;
                break;
            case CycleClass::Two:
                jm = mp;
                jn = np - 1;
                break;
        }
        if (!mt.J.count({jm, jn}))
            mt.J[{jm, jn}] = moment_integral(seed, spec.gamma, jm, jn);
    }
    return mt;
}

double rbar_moments(const Seed& seed, const SystemSpec& spec) {
    MomentTable mt = moment_table(seed, spec);
    double omega = period_quadrature(seed, spec.gamma);
    double mult = 0.0;
    switch (mt.cls) {
        case CycleClass::ZeroInner:
        case CycleClass::ZeroOuter: mult = 4.0; break;
        case CycleClass::One: mult = 2.0; break;
        case CycleClass::Two: mult = 1.0; break;
    }
    double acc = 0.0;
    for (const auto& [mn, pval] : mt.P) {
        int mp = mn.first, np = mn.second;
        int jm, jn;
        switch (mt.cls) {
            case CycleClass::ZeroInner:
            case CycleClass::ZeroOuter:
                if (mp % 2 != 0 || np % 2 != 1) continue;
                jm = mp / 2;
                jn = (np - 1) / 2;
                break;
            case CycleClass::One:
                if (np % 2 != 1) continue;
                jm = mp;
                jn = (np - 1) / 2;
                break;
            case CycleClass::Two:
                jm = mp;
                jn = np - 1;
                break;
            default: continue;
        }
        acc += pval * mt.J.at({jm, jn});
    }
    return mult * acc / omega;
}

double rbar_direct(const Seed& seed, const SystemSpec& spec, int n_samples) {
    CycleParam cycle = parametrize(seed, spec.gamma, n_samples, spec.sigma);
    int Nt = 2 * spec.perturbation.max_time_harmonic() + 2;
    Nt = std::max(Nt, 4);
    double acc = 0.0;
    for (int i = 0; i < Nt; ++i) {
        double t = spec.T * i / Nt;
        for (int j = 0; j < n_samples; ++j) {
            double C = cycle.C_samples[j], S = cycle.S_samples[j];
            acc += cycle.dC_samples[j] * spec.perturbation.eval_y(t, C, S, spec.T) -
                   cycle.dS_samples[j] * spec.perturbation.eval_x(t, C, S, spec.T);
        }
    }
    return acc / (static_cast<double>(Nt) * n_samples);
}

namespace {

struct ScanJob {
    int k, l;
    double lo, hi;  // range of k*b
};

std::vector<ScanJob> scan_jobs(const SystemSpec& spec, std::optional<CycleClass> filter,
                               double outer_cap, double grid) {
    const double g = spec.gamma;
    // Stay a hair inside the open admissibility intervals; separatrix seeds
    // themselves are rejected.
    const double edge = std::max(grid / 10.0, 1e-4);
    std::vector<ScanJob> jobs;
    auto want = [&](CycleClass c) { return !filter || *filter == c; };
    if (want(CycleClass::ZeroInner)) jobs.push_back({0, 0, edge, separatrix_r_i(g) - edge});
    if (want(CycleClass::ZeroOuter))
        jobs.push_back({0, 0, separatrix_r_e(g) + edge,
                        std::min(r_sigma(g, spec.sigma), outer_cap) - edge});
    if (want(CycleClass::One) && g <= 0.8) {
        auto [bd, bu] = practical_bounds(g);
        double lo = std::max(1.0 + edge, bd), hi = std::min(separatrix_r_e(g) - edge, bu);
        if (lo < hi) {
            jobs.push_back({1, 0, lo, hi});
            jobs.push_back({-1, 0, lo, hi});
        }
    }
    if (want(CycleClass::Two)) {
        double lo = 1.0 + edge, hi = separatrix_r_s(g) - edge;
        for (int k : {1, -1})
            for (int l : {1, -1}) jobs.push_back({k, l, lo, hi});
    }
    return jobs;
}

}  // namespace

std::vector<AdmissibleRoot> find_roots(const SystemSpec& spec, const FindRootsOptions& opts) {
    spec.validate();
    if (opts.grid > 1e-2) throw Error("scan grid must be at most 1e-2");
    NuMode mode = opts.nu_mode.value_or(default_nu_mode(spec));
    std::vector<AdmissibleRoot> out;

    for (const ScanJob& job : scan_jobs(spec, opts.class_filter, opts.outer_cap, opts.grid)) {
        auto seed_at = [&](double kb) {
            return Seed{job.k, job.l, (job.k == 0) ? kb : job.k * kb};
        };
        auto f = [&](double kb) { return rbar_moments(seed_at(kb), spec); };

        int n_pts = static_cast<int>(std::floor((job.hi - job.lo) / opts.grid)) + 1;
        if (n_pts < 2) continue;
        std::vector<double> kbs(n_pts), vals(n_pts);
        double max_abs = 0.0;
        for (int i = 0; i < n_pts; ++i) {
            kbs[i] = job.lo + i * opts.grid;
            vals[i] = f(kbs[i]);
            max_abs = std::max(max_abs, std::abs(vals[i]));
        }
        if (max_abs < 1e-14) continue;  // identically-zero average: no transversal roots

        for (int i = 0; i + 1 < n_pts; ++i) {
            bool sign_change = vals[i] * vals[i + 1] < 0.0;
            bool touch = std::abs(vals[i]) < 1e-12 * max_abs && !sign_change &&
                         (i == 0 || vals[i - 1] * vals[i + 1] > 0.0);
            if (!sign_change && !touch) continue;

            AdmissibleRoot root;
            root.bracket = {kbs[i], kbs[i + 1]};
            if (touch) {
                root.seed = seed_at(kbs[i]);
                root.tangential = true;
                root.reasons.push_back("tangential");
                root.admissible = false;
                root.cls = classify(root.seed, spec.gamma, spec.sigma);
                out.push_back(std::move(root));
                continue;
            }
            double a = kbs[i], b = kbs[i + 1], fa = vals[i];
            for (int it = 0; it < 100 && (b - a) > 1e-12; ++it) {
                double m = 0.5 * (a + b), fm = f(m);
                if (fa * fm <= 0.0) b = m;
                else { a = m; fa = fm; }
            }
            double kb_star = 0.5 * (a + b);
            root.seed = seed_at(kb_star);
            root.cls = classify(root.seed, spec.gamma, spec.sigma);
            root.omega_star = period_quadrature(root.seed, spec.gamma);
            root.rbar_residual = std::abs(rbar_direct(root.seed, spec, opts.n_samples));
            if (root.rbar_residual > 1e-8) root.reasons.push_back("rbar_direct_nonzero");

            if (opts.run_battery) {
                try {
                    Pipeline pipe = Pipeline::build(spec, root.seed, opts.n_samples);
                    SignClass expect = (root.cls == CycleClass::ZeroInner) ? SignClass::Negative
                                                                           : SignClass::Positive;
                    if (pipe.alpha_profile.sign != expect) root.reasons.push_back("alpha_mixed");
                    else {
                        try {
                            root.K = pipe.k(mode);
                        } catch (const DegenerateK&) {
                            root.reasons.push_back("degenerate_k");
                        } catch (const ResonantMode&) {
                            root.reasons.push_back("resonant_mode");
                        }
                    }
                } catch (const NotMonotone&) {
                    root.reasons.push_back("alpha_mixed");
                }
                if (mode == NuMode::Slow) {
                    root.siegel = siegel_check(root.omega_star, spec.T);
                    if (!root.siegel->pass) root.reasons.push_back("siegel_fail");
                }
            }
            root.admissible = root.reasons.empty();
            out.push_back(std::move(root));
        }
    }
    return out;
}

std::pair<double, double> torus_first_order(const Pipeline& pipe, const SecondaryFields& secondary,
                                            double eps, double t, double phi) {
    auto C_prof = FourierProfile::from_samples(pipe.cycle.omega, pipe.cycle.C_samples);
    auto S_prof = FourierProfile::from_samples(pipe.cycle.omega, pipe.cycle.S_samples);
    auto A_prof = FourierProfile::from_samples(pipe.cycle.omega, pipe.alpha_profile.alpha_samples);
    double C = C_prof(phi), S = S_prof(phi), al = A_prof(phi);
    double g;
    if (secondary.nu == 0 && !pipe.spec.autonomous) {
        g = secondary.g_total(t, phi);
    } else {
        g = secondary.g_bar + secondary.g_hat(phi);
    }
    double ups = g / al * eps;
    return {C + (C - pipe.seed.k) * ups, S + (S - pipe.seed.l) * ups};
}

}  // namespace gts

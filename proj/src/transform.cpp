#include "gts/transform.hpp"

#include <algorithm>
#include <cmath>

#include "gts/errors.hpp"

namespace gts {

TwoPeriodicField TwoPeriodicField::build(double T, double omega, int Nt, int Nphi,
                                         const std::function<double(double, double)>& f) {
    TwoPeriodicField out;
    out.T = T;
    out.omega = omega;
    out.Nt = Nt;
    out.Nphi = Nphi;
    out.samples.resize(static_cast<size_t>(Nt) * Nphi);
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j) out.at(i, j) = f(out.t_of(i), out.phi_of(j));
    out.refresh_means();
    return out;
}

TwoPeriodicField TwoPeriodicField::zeros(double T, double omega, int Nt, int Nphi) {
    return build(T, omega, Nt, Nphi, [](double, double) { return 0.0; });
}

void TwoPeriodicField::refresh_means() {
    t_mean_profile.assign(Nphi, 0.0);
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j) t_mean_profile[j] += at(i, j);
    for (auto& v : t_mean_profile) v /= Nt;
    mean = 0.0;
    for (double v : t_mean_profile) mean += v;
    mean /= Nphi;
}

std::vector<double> TwoPeriodicField::hat_profile() const {
    std::vector<double> out(t_mean_profile);
    for (auto& v : out) v -= mean;
    return out;
}

TwoPeriodicField TwoPeriodicField::tilde() const {
    TwoPeriodicField out(*this);
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j) out.at(i, j) -= t_mean_profile[j];
    out.refresh_means();
    return out;
}

double TwoPeriodicField::max_abs() const {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
}

double field_mean(const TwoPeriodicField& f) { return f.mean; }

double product_mean(const TwoPeriodicField& f, const TwoPeriodicField& g) {
    double acc = 0.0;
    for (size_t i = 0; i < f.samples.size(); ++i) acc += f.samples[i] * g.samples[i];
    return acc / static_cast<double>(f.samples.size());
}

double product_mean(const TwoPeriodicField& f, const std::vector<double>& w) {
    double acc = 0.0;
    for (int i = 0; i < f.Nt; ++i)
        for (int j = 0; j < f.Nphi; ++j) acc += f.at(i, j) * w[j];
    return acc / static_cast<double>(f.samples.size());
}

TwoPeriodicField d_phi(const TwoPeriodicField& f) {
    TwoPeriodicField out(f);
    std::vector<double> row(f.Nphi);
    for (int i = 0; i < f.Nt; ++i) {
        for (int j = 0; j < f.Nphi; ++j) row[j] = f.at(i, j);
        auto prof = FourierProfile::from_samples(f.omega, row).derivative();
        auto der = prof.resample(f.Nphi);
        for (int j = 0; j < f.Nphi; ++j) out.at(i, j) = der[j];
    }
    out.refresh_means();
    return out;
}

namespace {

// Apply a spectral operation along the t direction of each phi column.
template <typename Op>
TwoPeriodicField t_spectral(const TwoPeriodicField& f, Op op) {
    TwoPeriodicField out(f);
    std::vector<double> col(f.Nt);
    for (int j = 0; j < f.Nphi; ++j) {
        for (int i = 0; i < f.Nt; ++i) col[i] = f.at(i, j);
        auto prof = op(FourierProfile::from_samples(f.T, col));
        auto vals = prof.resample(f.Nt);
        for (int i = 0; i < f.Nt; ++i) out.at(i, j) = vals[i];
    }
    out.refresh_means();
    return out;
}

}  // namespace

TwoPeriodicField d_t(const TwoPeriodicField& f) {
    return t_spectral(f, [](const FourierProfile& p) { return p.derivative(); });
}

TwoPeriodicField anti_t(const TwoPeriodicField& f) {
    return t_spectral(f, [](const FourierProfile& p) { return p.antiderivative(); });
}

namespace {

std::vector<double> xi_from(const CycleParam& cycle, const std::vector<double>& alpha,
                            const std::vector<double>& alpha_pr, const std::vector<double>& p,
                            const std::vector<double>& q) {
    const int n = cycle.size();
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = (alpha_pr[i] * q[i] - p[i]) / alpha[i];
    return xi;
}

}  // namespace

PolarCoeffs polar_coeffs(const CycleParam& cycle, const AlphaProfile& alpha,
                         const SystemSpec& spec) {
    if (alpha.sign == SignClass::Mixed)
        throw NotMonotone("angular indicator changes sign along the cycle");
    const int n = cycle.size();
    const int k = cycle.seed.k, l = cycle.seed.l;
    const double g = cycle.gamma;

    PolarCoeffs pc;
    pc.seed = cycle.seed;
    pc.gamma = g;
    pc.omega = cycle.omega;
    pc.alpha_samples = alpha.alpha_samples;
    pc.alpha_prime_samples = alpha_prime(cycle);
    pc.p.resize(n);
    pc.q.resize(n);
    pc.p_breve.resize(n);
    pc.q_breve.resize(n);
    for (int i = 0; i < n; ++i) {
        double C = cycle.C_samples[i], S = cycle.S_samples[i];
        double al = pc.alpha_samples[i];
        double u = C - k, v = S - l;
        double c3 = C * C * C - C, s3 = S * S * S - S;
        pc.q[i] = (u * u * u * (2.0 * C + k) + g * v * v * v * (2.0 * S + l)) / (al * al);
        pc.p[i] = 3.0 * g * C * S * ((S * S - 1.0) * u * u - (C * C - 1.0) * v * v) / al;
        pc.p_breve[i] = g * (c3 * v * v * v - s3 * u * u * u) / al;
        pc.q_breve[i] = (u * u * u * u + g * v * v * v * v) / al;
    }

    // Admissible polar radius: class bound and the sigma-box bound.
    double b = cycle.seed.b;
    double rho_class = 0.0;
    switch (classify(cycle.seed, g, spec.sigma)) {
        case CycleClass::ZeroInner:
            rho_class = std::min(1.0, separatrix_r_i(g) / b - 1.0);
            break;
        case CycleClass::ZeroOuter:
            rho_class = std::min(1.0 - separatrix_r_e(g) / b, r_sigma(g, spec.sigma) / b - 1.0);
            break;
        case CycleClass::One: {
            double bd, bu;
            if (g <= 0.8) {
                std::tie(bd, bu) = practical_bounds(g);
            } else {
                auto reg = class1_region(g);
                if (!reg.b_p || !reg.b_m)
                    throw NotMonotone("no admissible class-1 window at this gamma");
                bd = *reg.b_p;
                bu = *reg.b_m;
            }
            rho_class = std::min((b - k * bd) / (b - k), (k * bu - b) / (b - k));
            break;
        }
        case CycleClass::Two:
            rho_class = std::min(1.0, (k * separatrix_r_s(g) - b) / (b - k));
            break;
    }
    double M = 0.0;
    for (int i = 0; i < n; ++i)
        M = std::max({M, std::abs(cycle.C_samples[i]), std::abs(cycle.S_samples[i])});
    M *= 1.05;  // margin standing in for the complex-strip bound
    if (M >= spec.sigma) throw DomainExceeded("cycle too close to the sigma box");
    double rho0 = (spec.sigma - M) / (M + 1.0);
    pc.rho_star = 0.95 * std::min(rho_class, rho0);
    pc.alpha_star = alpha.min_abs;

    auto xi = xi_from(cycle, pc.alpha_samples, pc.alpha_prime_samples, pc.p, pc.q);
    auto xi_prof = FourierProfile::from_samples(cycle.omega, xi);
    auto beta_prof = xi_prof.antiderivative();
    double beta0 = beta_prof(0.0);
    double beta_max = 0.0, q_bound = 0.0;
    for (int i = 0; i < n; ++i) {
        double bphi = beta_prof(cycle.phi_grid[i]) - beta0;
        beta_max = std::max(beta_max, std::abs(bphi));
        double al = pc.alpha_samples[i];
        double qq = std::abs(pc.q[i]);
        double qb = std::abs(pc.q_breve[i]) / (al * al);
        q_bound = std::max(q_bound, qq * (1.0 + std::abs(bphi)) +
                                        qb * (1.0 + std::abs(bphi)) * (1.0 + std::abs(bphi)));
    }
    pc.beta_star_max = beta_max;
    double r0 = pc.alpha_star * pc.rho_star / (1.0 + beta_max);
    double r_quarter = (beta_max > 0) ? 0.25 / beta_max : 1e300;
    double r_angular = 0.5 / std::max(q_bound, 1e-300);
    pc.r_star = 0.95 * std::min({r_quarter, r0, r_angular});
    return pc;
}

BetaData beta_data(const CycleParam& cycle, const PolarCoeffs& coeffs) {
    BetaData bd;
    bd.xi_samples = xi_from(cycle, coeffs.alpha_samples, coeffs.alpha_prime_samples, coeffs.p,
                            coeffs.q);
    auto xi_prof = FourierProfile::from_samples(cycle.omega, bd.xi_samples);
    bd.xi_mean = xi_prof.mean();
    if (std::abs(bd.xi_mean) > 1e-6)
        throw MeanNotZero("xi has a nonzero average; averaging data corrupted upstream");
    auto anti = xi_prof.antiderivative();
    double shift = anti(0.0);
    // Cumulative integral from phi = 0.
    std::vector<cplx> spec = anti.spectrum();
    spec[0] -= shift;
    bd.beta_series = FourierProfile(cycle.omega, std::move(spec));
    bd.beta_samples = bd.beta_series.resample(cycle.size());
    return bd;
}

PullbackSet pullbacks(const CycleParam& cycle, const AlphaProfile& alpha, const BetaData& beta,
                      const SystemSpec& spec, int Nt) {
    int needed = 2 * std::max(spec.perturbation.max_time_harmonic(),
                              spec.first_order.max_time_harmonic()) + 2;
    if (Nt < needed) throw Error("Nt too small for the perturbation's time harmonics");
    const int n = cycle.size();
    const int k = cycle.seed.k, l = cycle.seed.l;
    auto apr = alpha_prime(cycle);

    PullbackSet pb;
    auto grid = [&](const std::function<double(double, int)>& f) {
        TwoPeriodicField out;
        out.T = spec.T;
        out.omega = cycle.omega;
        out.Nt = Nt;
        out.Nphi = n;
        out.samples.resize(static_cast<size_t>(Nt) * n);
        for (int i = 0; i < Nt; ++i) {
            double t = spec.T * i / Nt;
            for (int j = 0; j < n; ++j) out.at(i, j) = f(t, j);
        }
        out.refresh_means();
        return out;
    };

    pb.R0 = grid([&](double t, int j) {
        double C = cycle.C_samples[j], S = cycle.S_samples[j];
        return cycle.dC_samples[j] * spec.perturbation.eval_y(t, C, S, spec.T) -
               cycle.dS_samples[j] * spec.perturbation.eval_x(t, C, S, spec.T);
    });
    pb.Phi0 = grid([&](double t, int j) {
        double C = cycle.C_samples[j], S = cycle.S_samples[j];
        return ((S - l) * spec.perturbation.eval_x(t, C, S, spec.T) -
                (C - k) * spec.perturbation.eval_y(t, C, S, spec.T)) /
               alpha.alpha_samples[j];
    });
    pb.Rr = grid([&](double t, int j) {
        double C = cycle.C_samples[j], S = cycle.S_samples[j];
        double al = alpha.alpha_samples[j];
        double u = C - k, v = S - l;
        double pr = (cycle.dC_samples[j] * (u * spec.perturbation.eval_y_dx(t, C, S, spec.T) +
                                            v * spec.perturbation.eval_y_dy(t, C, S, spec.T)) -
                     cycle.dS_samples[j] * (u * spec.perturbation.eval_x_dx(t, C, S, spec.T) +
                                            v * spec.perturbation.eval_x_dy(t, C, S, spec.T))) /
                    al;
        double r0 = cycle.dC_samples[j] * spec.perturbation.eval_y(t, C, S, spec.T) -
                    cycle.dS_samples[j] * spec.perturbation.eval_x(t, C, S, spec.T);
        double phi0 = (v * spec.perturbation.eval_x(t, C, S, spec.T) -
                       u * spec.perturbation.eval_y(t, C, S, spec.T)) /
                      al;
        return pr + apr[j] / al * phi0 - 2.0 * beta.beta_samples[j] * r0;
    });
    pb.Reps = grid([&](double t, int j) {
        double C = cycle.C_samples[j], S = cycle.S_samples[j];
        return cycle.dC_samples[j] * spec.first_order.eval_y(t, C, S, spec.T) -
               cycle.dS_samples[j] * spec.first_order.eval_x(t, C, S, spec.T);
    });
    return pb;
}

double radial_rhs(const CycleParam& cycle, const PolarCoeffs& coeffs, const BetaData& beta,
                  const SystemSpec& spec, double t, int jp, double r, double eps) {
    const int k = cycle.seed.k, l = cycle.seed.l;
    double C = cycle.C_samples[jp], S = cycle.S_samples[jp];
    double al = coeffs.alpha_samples[jp], apr = coeffs.alpha_prime_samples[jp];
    double bet = beta.beta_samples[jp];
    double bet_pr = beta.xi_samples[jp] - beta.xi_mean;
    double rho = (r + bet * r * r) / al;
    double x = C + (C - k) * rho, y = S + (S - l) * rho;
    double X = spec.perturbation.eval_x(t, x, y, spec.T) + eps * spec.first_order.eval_x(t, x, y, spec.T);
    double Y = spec.perturbation.eval_y(t, x, y, spec.T) + eps * spec.first_order.eval_y(t, x, y, spec.T);
    double P = cycle.dC_samples[jp] * Y - cycle.dS_samples[jp] * X;
    double Phi = ((S - l) * X - (C - k) * Y) / (al * (1.0 + rho));
    double coef = apr / al * r + (apr / al * bet - bet_pr) * r * r;
    return (P + coef * Phi) / (1.0 + 2.0 * bet * r);
}

double unperturbed_radial_rate(const CycleParam& /*cycle*/, const PolarCoeffs& coeffs,
                               const BetaData& beta, int jp, double r) {
    double al = coeffs.alpha_samples[jp], apr = coeffs.alpha_prime_samples[jp];
    double bet = beta.beta_samples[jp];
    double bet_pr = beta.xi_samples[jp] - beta.xi_mean;
    double rho = (r + bet * r * r) / al;
    double rho_dot = -apr / al * rho - coeffs.p[jp] * rho * rho +
                     coeffs.p_breve[jp] * rho * rho * rho;
    double phi_dot = 1.0 + al * coeffs.q[jp] * rho + coeffs.q_breve[jp] * rho * rho;
    double drho_dphi = (-apr / (al * al)) * (r + bet * r * r) + bet_pr * r * r / al;
    double drho_dr = (1.0 + 2.0 * bet * r) / al;
    return (rho_dot - drho_dphi * phi_dot) / drho_dr;
}

}  // namespace gts

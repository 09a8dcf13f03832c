#include "gts/avg2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gts/errors.hpp"

namespace gts {

SiegelReport siegel_check(double omega, double T, int N_max, double tau) {
    SiegelReport rep;
    rep.omega = omega;
    rep.T = T;
    rep.N_max = N_max;
    rep.tau = tau;
    double worst = 1e300;
    bool resonant = false;
    for (int m = -N_max; m <= N_max; ++m) {
        for (int n = -N_max; n <= N_max; ++n) {
            if (m == 0 && n == 0) continue;
            double d = std::abs(m * omega + n * T);
            if (d < 1e-10) resonant = true;
            double margin = d * std::pow(static_cast<double>(std::abs(m) + std::abs(n)), tau);
            if (margin < worst) {
                worst = margin;
                rep.worst_m = m;
                rep.worst_n = n;
            }
        }
    }
    rep.worst_margin = worst;
    rep.vartheta_fit = worst;
    rep.pass = !resonant && worst > 0.0;
    return rep;
}

Spectrum2 Spectrum2::from_field(const TwoPeriodicField& f) {
    Spectrum2 s;
    s.T = f.T;
    s.omega = f.omega;
    s.Nt = f.Nt;
    s.Nphi = f.Nphi;
    s.coef.assign(f.samples.begin(), f.samples.end());
    // FFT along phi (rows), then along t (columns).
    std::vector<cplx> row(f.Nphi), col(f.Nt);
    for (int i = 0; i < f.Nt; ++i) {
        for (int j = 0; j < f.Nphi; ++j) row[j] = s.coef[i * f.Nphi + j];
        fft(row, false);
        for (int j = 0; j < f.Nphi; ++j) s.coef[i * f.Nphi + j] = row[j];
    }
    for (int j = 0; j < f.Nphi; ++j) {
        for (int i = 0; i < f.Nt; ++i) col[i] = s.coef[i * f.Nphi + j];
        fft(col, false);
        for (int i = 0; i < f.Nt; ++i) s.coef[i * f.Nphi + j] = col[i];
    }
    double norm = static_cast<double>(f.Nt) * f.Nphi;
    for (auto& c : s.coef) c /= norm;
    return s;
}

TwoPeriodicField Spectrum2::to_field() const {
    std::vector<cplx> work(coef);
    std::vector<cplx> row(Nphi), col(Nt);
    for (int j = 0; j < Nphi; ++j) {
        for (int i = 0; i < Nt; ++i) col[i] = work[i * Nphi + j];
        fft(col, true);
        for (int i = 0; i < Nt; ++i) work[i * Nphi + j] = col[i] * static_cast<double>(Nt);
    }
    for (int i = 0; i < Nt; ++i) {
        for (int j = 0; j < Nphi; ++j) row[j] = work[i * Nphi + j];
        fft(row, true);
        for (int j = 0; j < Nphi; ++j) work[i * Nphi + j] = row[j] * static_cast<double>(Nphi);
    }
    TwoPeriodicField f;
    f.T = T;
    f.omega = omega;
    f.Nt = Nt;
    f.Nphi = Nphi;
    f.samples.resize(work.size());
    for (size_t i = 0; i < work.size(); ++i) f.samples[i] = work[i].real();
    f.refresh_means();
    return f;
}

double Spectrum2::operator()(double t, double phi) const {
    const double wt = 2.0 * std::numbers::pi / T;
    const double wp = 2.0 * std::numbers::pi / omega;
    cplx acc = 0.0;
    for (int i = 0; i < Nt; ++i) {
        int hi = fft_harmonic(i, Nt);
        cplx et(std::cos(wt * hi * t), std::sin(wt * hi * t));
        cplx rowacc = 0.0;
        for (int j = 0; j < Nphi; ++j) {
            int hj = fft_harmonic(j, Nphi);
            cplx ep(std::cos(wp * hj * phi), std::sin(wp * hj * phi));
            rowacc += coef[i * Nphi + j] * ep;
        }
        acc += et * rowacc;
    }
    return acc.real();
}

TransportSolution solve_transport(const TwoPeriodicField& eta_tilde, int n_harmonics) {
    const int Nt = eta_tilde.Nt, Nphi = eta_tilde.Nphi;
    if (n_harmonics <= 0) n_harmonics = Nphi / 2 - 1;
    double scale = std::max(eta_tilde.max_abs(), 1e-300);
    for (double v : eta_tilde.t_mean_profile)
        if (std::abs(v) > 1e-8 * std::max(scale, 1.0))
            throw MeanMismatch("transport forcing must have zero t-average at each phi");

    const double wt = 2.0 * std::numbers::pi / eta_tilde.T;
    const double wp = 2.0 * std::numbers::pi / eta_tilde.omega;

    // Small-denominator guard per angular harmonic.
    for (int n = 1; n <= n_harmonics; ++n) {
        double arg = 2.0 * std::numbers::pi * n * eta_tilde.T / eta_tilde.omega;
        if (std::abs(1.0 - std::cos(arg)) < 1e-10)
            throw ResonantMode("angular harmonic resonates with the time period");
    }

    Spectrum2 spec = Spectrum2::from_field(eta_tilde);
    Spectrum2 chi = spec;
    for (int i = 0; i < Nt; ++i) {
        int hi = fft_harmonic(i, Nt);
        for (int j = 0; j < Nphi; ++j) {
            int hj = fft_harmonic(j, Nphi);
            cplx& c = chi.coef[i * Nphi + j];
            if (std::abs(hj) > n_harmonics || (hi == 0 && hj == 0)) {
                c = 0.0;
                continue;
            }
            double denom = wt * hi + wp * hj;
            if (std::abs(denom) < 1e-10 * wp) throw ResonantMode("vanishing transport denominator");
            c /= cplx(0.0, denom);
        }
    }

    TransportSolution sol;
    sol.n_harmonics = n_harmonics;
    sol.chi_series = chi;
    sol.chi = chi.to_field();

    TwoPeriodicField res = d_t(sol.chi);
    TwoPeriodicField dphi = d_phi(sol.chi);
    double rmax = 0.0;
    for (size_t i = 0; i < res.samples.size(); ++i)
        rmax = std::max(rmax,
                        std::abs(res.samples[i] + dphi.samples[i] - eta_tilde.samples[i]));
    sol.residual_max = rmax;

    // Per-harmonic amplitude decay of the solution in the angular direction.
    std::vector<double> amps;
    for (int j = 1; j < Nphi / 2; ++j) {
        double a = 0.0;
        for (int i = 0; i < Nt; ++i) a = std::max(a, std::abs(chi.coef[i * Nphi + j]));
        amps.push_back(a);
    }
    sol.coeff_decay_rate = fit_decay_ratio(amps);
    return sol;
}

namespace {

FourierProfile zero_mean_antiderivative(double period, const std::vector<double>& samples) {
    auto prof = FourierProfile::from_samples(period, samples);
    return prof.antiderivative();
}

// Solve d_t(x) + d_phi(x) = drive for a zero-double-mean drive under the
// slow-time decomposition: the t-average part integrates in phi, the rest is
// a genuine transport solve.
struct SplitSolution {
    FourierProfile hat;
    TwoPeriodicField tilde;
    std::optional<Spectrum2> tilde_series;
    double residual = 0.0;
};

SplitSolution solve_slow(const TwoPeriodicField& drive, int n_harmonics) {
    SplitSolution out;
    std::vector<double> hat = drive.hat_profile();
    out.hat = zero_mean_antiderivative(drive.omega, hat);
    TransportSolution ts = solve_transport(drive.tilde(), n_harmonics);
    out.tilde = std::move(ts.chi);
    out.tilde_series = std::move(ts.chi_series);
    out.residual = ts.residual_max;
    return out;
}

std::vector<double> profile_samples(const FourierProfile& p, int n) { return p.resample(n); }

// field + profile broadcast over t
TwoPeriodicField add_profile(const TwoPeriodicField& f, const std::vector<double>& w) {
    TwoPeriodicField out(f);
    for (int i = 0; i < f.Nt; ++i)
        for (int j = 0; j < f.Nphi; ++j) out.at(i, j) += w[j];
    out.refresh_means();
    return out;
}

TwoPeriodicField scale_columns(const TwoPeriodicField& f, const std::vector<double>& w) {
    TwoPeriodicField out(f);
    for (int i = 0; i < f.Nt; ++i)
        for (int j = 0; j < f.Nphi; ++j) out.at(i, j) *= w[j];
    out.refresh_means();
    return out;
}

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

double SecondaryFields::g_total(double t, double phi) const {
    double v = g_bar + g_hat(phi);
    if (g_tilde_series) v += (*g_tilde_series)(t, phi);
    return v;
}

SecondaryFields secondary_fields(const PullbackSet& pb, const PolarCoeffs& coeffs, int nu,
                                 std::optional<double> K_opt, int n_harmonics) {
    SecondaryFields sf;
    sf.nu = nu;
    const int Nphi = pb.R0.Nphi, Nt = pb.R0.Nt;
    const std::vector<double>& q = coeffs.q;

    if (nu == 1) {
        std::vector<double> hat_r0 = pb.R0.hat_profile();
        sf.g_hat = zero_mean_antiderivative(pb.R0.omega, hat_r0);
        sf.g_tilde = anti_t(pb.R0.tilde());

        // Profile driving the h equation: t-average of Rr minus hat(R0) q.
        std::vector<double> hq(Nphi);
        for (int j = 0; j < Nphi; ++j) hq[j] = pb.Rr.t_mean_profile[j] - hat_r0[j] * q[j];
        double K = K_opt ? *K_opt : mean_of(hq);
        if (std::abs(K) < 1e-3)
            throw DegenerateK("nondegeneracy constant below 1e-3; secondary averaging undefined");
        sf.K = K;
        std::vector<double> h_drive(Nphi);
        for (int j = 0; j < Nphi; ++j) h_drive[j] = hq[j] - K;
        sf.h_hat = zero_mean_antiderivative(pb.R0.omega, h_drive);
        sf.h_tilde = anti_t(pb.Rr.tilde());

        std::vector<double> ghat = profile_samples(sf.g_hat, Nphi);
        // rr_minus[j-profile], full field version of Rr - hat(R0) q
        TwoPeriodicField rr_m = pb.Rr;
        for (int i = 0; i < Nt; ++i)
            for (int j = 0; j < Nphi; ++j) rr_m.at(i, j) -= hat_r0[j] * q[j];
        rr_m.refresh_means();
        double m_phi = product_mean(pb.Phi0, hat_r0);
        double m_eps = pb.Reps.mean;
        double m_g = product_mean(rr_m, ghat);
        sf.g_bar = (m_phi - m_eps - m_g) / K;

        TwoPeriodicField g_tilde_prime = d_phi(sf.g_tilde);
        TwoPeriodicField F = rr_m;  // g_bar (Rr - hat q) - (hat Phi - Reps - ghat(...) + g~')
        for (int i = 0; i < Nt; ++i)
            for (int j = 0; j < Nphi; ++j) {
                double rrm = rr_m.at(i, j);
                F.at(i, j) = sf.g_bar * rrm -
                             (hat_r0[j] * pb.Phi0.at(i, j) - pb.Reps.at(i, j) - ghat[j] * rrm +
                              g_tilde_prime.at(i, j));
            }
        F.refresh_means();
        if (std::abs(F.mean) > 1e-6 * std::max(1.0, F.max_abs()))
            throw MeanMismatch("order-eps^2 drive has a nonzero average");
        sf.f_hat = zero_mean_antiderivative(pb.R0.omega, F.hat_profile());
        sf.f_tilde = anti_t(F.tilde());

        // Angular drift Theta = Phi0 + (g_bar + g_hat) q.
        std::vector<double> gq(Nphi);
        for (int j = 0; j < Nphi; ++j) gq[j] = (sf.g_bar + ghat[j]) * q[j];
        TwoPeriodicField theta = add_profile(pb.Phi0, gq);
        sf.theta_bar = theta.mean;
        sf.delta_hat = zero_mean_antiderivative(pb.R0.omega, theta.hat_profile());
        sf.delta_tilde = anti_t(theta.tilde());
        return sf;
    }

    // Slow-time path: the g equation is a transport solve.
    TwoPeriodicField r0_centered = pb.R0;
    for (auto& v : r0_centered.samples) v -= pb.R0.mean;
    r0_centered.refresh_means();
    SplitSolution gs = solve_slow(r0_centered, n_harmonics);
    sf.g_hat = gs.hat;
    sf.g_tilde = gs.tilde;
    sf.g_tilde_series = gs.tilde_series;
    sf.transport_residual = gs.residual;

    std::vector<double> ghat_prime = profile_samples(sf.g_hat.derivative(), Nphi);
    TwoPeriodicField g_prime = d_phi(sf.g_tilde);  // tilde part derivative
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j) g_prime.at(i, j) += ghat_prime[j];
    g_prime.refresh_means();

    TwoPeriodicField gpq = scale_columns(g_prime, q);
    double K = K_opt ? *K_opt : pb.Rr.mean - gpq.mean;
    if (std::abs(K) < 1e-3)
        throw DegenerateK("nondegeneracy constant below 1e-3; secondary averaging undefined");
    sf.K = K;

    TwoPeriodicField h_drive = pb.Rr;
    for (size_t i = 0; i < h_drive.samples.size(); ++i)
        h_drive.samples[i] -= gpq.samples[i] + K;
    h_drive.refresh_means();
    SplitSolution hs = solve_slow(h_drive, n_harmonics);
    sf.h_hat = hs.hat;
    sf.h_tilde = hs.tilde;
    sf.transport_residual = std::max(sf.transport_residual, hs.residual);

    std::vector<double> ghat = profile_samples(sf.g_hat, Nphi);
    TwoPeriodicField g_full = add_profile(sf.g_tilde, ghat);

    double m_gphi = product_mean(g_prime, pb.Phi0);
    double m_eps = pb.Reps.mean;
    // mean of g (Rr - g' q)
    TwoPeriodicField rr_m = pb.Rr;
    for (size_t i = 0; i < rr_m.samples.size(); ++i) rr_m.samples[i] -= gpq.samples[i];
    rr_m.refresh_means();
    double m_g = product_mean(rr_m, g_full);
    sf.g_bar = (m_gphi - m_eps - m_g) / K;

    // f drive: Rr (g_bar + g) + Reps - g'(Phi0 + (g_bar + g) q).
    TwoPeriodicField F = pb.Rr;
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j) {
            double gtot = sf.g_bar + g_full.at(i, j);
            F.at(i, j) = pb.Rr.at(i, j) * gtot + pb.Reps.at(i, j) -
                         g_prime.at(i, j) * (pb.Phi0.at(i, j) + gtot * q[j]);
        }
    F.refresh_means();
    if (std::abs(F.mean) > 1e-6 * std::max(1.0, F.max_abs()))
        throw MeanMismatch("order-eps^2 drive has a nonzero average");
    SplitSolution fs = solve_slow(F, n_harmonics);
    sf.f_hat = fs.hat;
    sf.f_tilde = fs.tilde;
    sf.transport_residual = std::max(sf.transport_residual, fs.residual);

    TwoPeriodicField theta = pb.Phi0;
    for (int i = 0; i < Nt; ++i)
        for (int j = 0; j < Nphi; ++j)
            theta.at(i, j) += (sf.g_bar + g_full.at(i, j)) * q[j];
    theta.refresh_means();
    sf.theta_bar = theta.mean;
    TwoPeriodicField d_drive = theta;
    for (auto& v : d_drive.samples) v -= theta.mean;
    d_drive.refresh_means();
    SplitSolution ds = solve_slow(d_drive, n_harmonics);
    sf.delta_hat = ds.hat;
    sf.delta_tilde = ds.tilde;
    sf.transport_residual = std::max(sf.transport_residual, ds.residual);
    return sf;
}

Nondegeneracy k_constant(const PullbackSet& pb, const PolarCoeffs& coeffs,
                         const SecondaryFields& secondary, int nu) {
    Nondegeneracy nd;
    nd.nu = nu;
    if (nu == 1) {
        std::vector<double> hat_r0 = pb.R0.hat_profile();
        double m = 0.0;
        for (int j = 0; j < pb.R0.Nphi; ++j) m += hat_r0[j] * coeffs.q[j];
        m /= pb.R0.Nphi;
        nd.K = pb.Rr.mean - m;
    } else {
        std::vector<double> ghat_prime =
            profile_samples(secondary.g_hat.derivative(), pb.R0.Nphi);
        TwoPeriodicField g_prime = d_phi(secondary.g_tilde);
        for (int i = 0; i < pb.R0.Nt; ++i)
            for (int j = 0; j < pb.R0.Nphi; ++j) g_prime.at(i, j) += ghat_prime[j];
        TwoPeriodicField gpq = scale_columns(g_prime, coeffs.q);
        nd.K = pb.Rr.mean - gpq.mean;
    }
    if (std::abs(nd.K) < 1e-3) throw DegenerateK("nondegeneracy constant below 1e-3");
    nd.stability = nd.K < 0 ? Stability::ForwardStable : Stability::BackwardStable;
    return nd;
}

Nondegeneracy k_constant_autonomous(const PullbackSet& pb, const PolarCoeffs& coeffs) {
    std::vector<double> hat_r0 = pb.R0.hat_profile();
    double m = 0.0;
    for (int j = 0; j < pb.R0.Nphi; ++j) m += hat_r0[j] * coeffs.q[j];
    m /= pb.R0.Nphi;
    Nondegeneracy nd;
    nd.nu = 0;
    nd.autonomous_scaling = true;
    nd.K = (pb.Rr.mean - m) * pb.R0.omega;
    if (std::abs(nd.K) < 1e-3) throw DegenerateK("nondegeneracy constant below 1e-3");
    nd.stability = nd.K < 0 ? Stability::ForwardStable : Stability::BackwardStable;
    return nd;
}

}  // namespace gts

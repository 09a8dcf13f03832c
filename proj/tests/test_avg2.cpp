#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/generate.hpp"
#include "gts/verify.hpp"

using namespace gts;

TEST_CASE("siegel scan flags exact resonance and passes irrational ratios") {
    double T = 2.0 * std::numbers::pi;
    CHECK_FALSE(siegel_check(T, T, 50).pass);
    double golden = 0.5 * (1.0 + std::sqrt(5.0));
    auto rep = siegel_check(T * golden, T, 50);
    CHECK(rep.pass);
    CHECK(rep.worst_margin > 0.0);
    CHECK(siegel_check(3.8667, T, 50).pass);
}

TEST_CASE("transport solver recovers a manufactured single harmonic") {
    double omega = 3.0, T = 2.0 * std::numbers::pi;
    double wp = 2.0 * std::numbers::pi / omega, wt = 2.0 * std::numbers::pi / T;
    auto eta = TwoPeriodicField::build(T, omega, 16, 64, [&](double t, double phi) {
        return std::cos(wp * phi + wt * t);
    });
    auto sol = solve_transport(eta);
    for (double t : {0.3, 2.9})
        for (double phi : {0.1, 1.7, 2.9}) {
            double expect = std::sin(wp * phi + wt * t) / (wp + wt);
            CHECK(sol.chi_series(t, phi) == doctest::Approx(expect).epsilon(1e-10));
        }
    CHECK(sol.residual_max <= 1e-10);
    CHECK(std::abs(sol.chi.mean) <= 1e-12);
}

TEST_CASE("transport of zero forcing is zero and resonant periods throw") {
    double T = 2.0 * std::numbers::pi;
    auto zero = TwoPeriodicField::zeros(T, 3.0, 8, 32);
    CHECK(solve_transport(zero).chi.max_abs() <= 1e-14);

    auto eta = TwoPeriodicField::build(T, T / 2.0, 8, 32, [&](double t, double phi) {
        return std::cos(2.0 * std::numbers::pi / (T / 2.0) * phi) * std::sin(t);
    });
    CHECK_THROWS_AS(solve_transport(eta), ResonantMode);
}

TEST_CASE("transport solver rejects forcing with a t-average") {
    auto eta = TwoPeriodicField::build(2.0, 3.0, 8, 32,
                                       [](double, double phi) { return std::cos(phi); });
    CHECK_THROWS_AS(solve_transport(eta), MeanMismatch);
}

TEST_CASE("truncation residual follows the fitted harmonic decay") {
    SystemSpec spec = demo_periodic_spec(0);
    Pipeline pipe = Pipeline::build(spec, {0, 0, 1.80780965});
    auto tilde = pipe.pulls.R0.tilde();
    auto s8 = solve_transport(tilde, 8);
    auto s15 = solve_transport(tilde, 15);
    auto full = solve_transport(tilde);
    CHECK(full.residual_max <= 1e-6 * tilde.max_abs());
    CHECK(s15.residual_max < s8.residual_max);
    double q = full.coeff_decay_rate;
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    double predicted_ratio = std::pow(q, -7.0);  // tail shrinks by q per harmonic
    double measured_ratio = s8.residual_max / s15.residual_max;
    CHECK(measured_ratio >= predicted_ratio / 5.0);
    CHECK(measured_ratio <= predicted_ratio * 5.0);
}

TEST_CASE("fast-time secondary fields satisfy their defining identities") {
    SystemSpec spec = demo_periodic_spec(1);
    Pipeline pipe = Pipeline::build(spec, {1, 1, 1.27099142});
    SecondaryFields sf = pipe.secondary(1);
    const auto& pb = pipe.pulls;
    auto hat_r0 = pb.R0.hat_profile();
    auto ghat_prime = sf.g_hat.derivative();
    for (int j = 0; j < pb.R0.Nphi; j += 37)
        CHECK(std::abs(ghat_prime(pb.R0.phi_of(j)) - hat_r0[j]) <= 1e-8);
    auto gt_dot = d_t(sf.g_tilde);
    auto r_tilde = pb.R0.tilde();
    double worst = 0.0;
    for (size_t i = 0; i < gt_dot.samples.size(); ++i)
        worst = std::max(worst, std::abs(gt_dot.samples[i] - r_tilde.samples[i]));
    CHECK(worst <= 1e-8);

    // delta identities: hat derivative matches the hatted drift, t-derivative
    // the tilde part
    std::vector<double> ghat = sf.g_hat.resample(pb.R0.Nphi);
    TwoPeriodicField theta = pb.Phi0;
    for (int i = 0; i < theta.Nt; ++i)
        for (int j = 0; j < theta.Nphi; ++j)
            theta.at(i, j) += (sf.g_bar + ghat[j]) * pipe.coeffs.q[j];
    theta.refresh_means();
    CHECK(sf.theta_bar == doctest::Approx(theta.mean).epsilon(1e-12));
    auto theta_hat = theta.hat_profile();
    auto dhat_prime = sf.delta_hat.derivative();
    for (int j = 0; j < theta.Nphi; j += 41)
        CHECK(std::abs(dhat_prime(theta.phi_of(j)) - theta_hat[j]) <= 1e-8);
    auto dt_dot = d_t(sf.delta_tilde);
    auto theta_tilde = theta.tilde();
    worst = 0.0;
    for (size_t i = 0; i < dt_dot.samples.size(); ++i)
        worst = std::max(worst, std::abs(dt_dot.samples[i] - theta_tilde.samples[i]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("slow-time fields solve their transport equations") {
    SystemSpec spec = demo_periodic_spec(0);
    Pipeline pipe = Pipeline::build(spec, {0, 0, 1.80780965});
    SecondaryFields sf = pipe.secondary(0);
    CHECK(sf.transport_residual <= 1e-6 * std::max(1.0, pipe.pulls.R0.max_abs()));

    // g solves d_t g + d_phi g = R0 - mean: check on the grid
    auto gt = sf.g_tilde;
    auto lhs = d_t(gt);
    auto dphi = d_phi(gt);
    std::vector<double> ghat_prime = sf.g_hat.derivative().resample(gt.Nphi);
    double worst = 0.0;
    for (int i = 0; i < gt.Nt; ++i)
        for (int j = 0; j < gt.Nphi; ++j) {
            double residual = lhs.at(i, j) + dphi.at(i, j) + ghat_prime[j] -
                              (pipe.pulls.R0.at(i, j) - pipe.pulls.R0.mean);
            worst = std::max(worst, std::abs(residual));
        }
    CHECK(worst <= 1e-6 * std::max(1.0, pipe.pulls.R0.max_abs()));
}

TEST_CASE("two independent routes to the order-eps mean shift agree") {
    SystemSpec spec = demo_periodic_spec(0);
    spec.first_order.y_coeffs[{1, 0}] = TrigPoly{0.3, {}};  // nonzero eps-derivative
    Pipeline pipe = Pipeline::build(spec, {1, 1, 1.27099142});
    SecondaryFields sf = pipe.secondary(0);
    // Route 2: require zero mean of the order-eps^2 drive, linear in g_bar.
    const auto& pb = pipe.pulls;
    auto mean_drive = [&](double gbar) {
        std::vector<double> ghat = sf.g_hat.resample(pb.R0.Nphi);
        TwoPeriodicField gp = d_phi(sf.g_tilde);
        std::vector<double> gph = sf.g_hat.derivative().resample(pb.R0.Nphi);
        double acc = 0.0;
        for (int i = 0; i < pb.R0.Nt; ++i)
            for (int j = 0; j < pb.R0.Nphi; ++j) {
                double g = gbar + ghat[j] + sf.g_tilde.at(i, j);
                double gprime = gph[j] + gp.at(i, j);
                acc += pb.Rr.at(i, j) * g + pb.Reps.at(i, j) -
                       gprime * (pb.Phi0.at(i, j) + g * pipe.coeffs.q[j]);
            }
        return acc / static_cast<double>(pb.R0.Nt * pb.R0.Nphi);
    };
    double m0 = mean_drive(0.0), m1 = mean_drive(1.0);
    double gbar_route2 = -m0 / (m1 - m0);
    CHECK(std::abs(gbar_route2 - sf.g_bar) <= 1e-6);
}

TEST_CASE("slow and fast nondegeneracy constants coincide exactly") {
    // The oscillating part of the transport solution has zero t-average at
    // every angle, so it cannot move the double mean: both conventions give
    // one constant.
    SystemSpec spec = demo_periodic_spec(0);
    for (const Seed& s : {Seed{0, 0, 1.80780965}, Seed{1, 1, 1.27099142}}) {
        Pipeline pipe = Pipeline::build(spec, s);
        double k0 = pipe.k(NuMode::Slow).K;
        double k1 = pipe.k(NuMode::Fast).K;
        CHECK(std::abs(k0 - k1) <= 1e-8);
    }
}

TEST_CASE("autonomous constant is the period-integrated fast constant") {
    SystemSpec sa = demo_autonomous_spec();
    Pipeline pipe = Pipeline::build(sa, {1, 0, 1.13585853});
    double k1 = pipe.k(NuMode::Fast).K;
    double ka = pipe.k(NuMode::Autonomous).K;
    CHECK(ka == doctest::Approx(k1 * pipe.cycle.omega).epsilon(1e-12));
    CHECK(pipe.k(NuMode::Autonomous).stability == Stability::ForwardStable);
}

TEST_CASE("zero perturbation degenerates") {
    SystemSpec spec = demo_autonomous_spec();
    spec.perturbation.y_coeffs.clear();
    Pipeline pipe = Pipeline::build(spec, {0, 0, 1.7});
    CHECK_THROWS_AS(pipe.secondary(1), DegenerateK);
    CHECK_THROWS_AS(pipe.k(NuMode::Fast), DegenerateK);
}

TEST_CASE("slow-time solution is two-periodic at the seams") {
    SystemSpec spec = demo_periodic_spec(0);
    Pipeline pipe = Pipeline::build(spec, {0, 0, 1.80780965});
    SecondaryFields sf = pipe.secondary(0, 15);
    double omega = pipe.cycle.omega, T = spec.T;
    double worst_t = 0.0, worst_p = 0.0;
    for (int l = 0; l <= 100; ++l) {
        double phi = 0.01 * omega * l;
        double t = 0.02 * std::numbers::pi * l;
        worst_t = std::max(worst_t, std::abs(sf.g_total(0.0, phi) - sf.g_total(T, phi)));
        worst_p = std::max(worst_p, std::abs(sf.g_total(t, 0.0) - sf.g_total(t, omega)));
    }
    CHECK(worst_t < 0.011);
    CHECK(worst_p < 0.011);
}

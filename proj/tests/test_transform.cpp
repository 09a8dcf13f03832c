#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/transform.hpp"
#include "gts/verify.hpp"

using namespace gts;

namespace {

struct Stage {
    CycleParam cycle;
    AlphaProfile prof;
    PolarCoeffs coeffs;
    BetaData beta;
};

Stage make_stage(const Seed& s, const SystemSpec& spec, int n = 512) {
    Stage st;
    st.cycle = parametrize(s, spec.gamma, n, spec.sigma);
    st.prof = alpha(st.cycle);
    st.coeffs = polar_coeffs(st.cycle, st.prof, spec);
    st.beta = beta_data(st.cycle, st.coeffs);
    return st;
}

}  // namespace

TEST_CASE("class-0 polar coefficients reduce to their short forms") {
    SystemSpec spec = demo_autonomous_spec();
    auto st = make_stage({0, 0, 1.7}, spec);
    auto apr = alpha_prime(st.cycle);
    for (int i = 0; i < st.cycle.size(); i += 17) {
        double C = st.cycle.C_samples[i], S = st.cycle.S_samples[i];
        double al = st.prof.alpha_samples[i];
        double g = spec.gamma;
        CHECK(st.coeffs.q[i] ==
              doctest::Approx(2.0 * (C * C * C * C + g * S * S * S * S) / (al * al))
                  .epsilon(1e-11));
        CHECK(st.coeffs.p[i] == doctest::Approx(1.5 * apr[i] / al).epsilon(1e-11));
    }
}

TEST_CASE("polar change rejects mixed monotonicity") {
    SystemSpec spec = demo_autonomous_spec();
    auto cp = parametrize({1, 0, 1.02}, 0.5, 256, spec.sigma);
    auto prof = alpha(cp);
    REQUIRE(prof.sign == SignClass::Mixed);
    CHECK_THROWS_AS(polar_coeffs(cp, prof, spec), NotMonotone);
}

TEST_CASE("admissible radii are positive and ordered") {
    SystemSpec spec = demo_autonomous_spec();
    for (const Seed& s : {Seed{0, 0, 0.3}, Seed{0, 0, 1.808}, Seed{1, 0, 1.13}, Seed{1, 1, 1.27}}) {
        auto st = make_stage(s, spec);
        CHECK(st.coeffs.rho_star > 0.0);
        CHECK(st.coeffs.rho_star < 1.0);
        CHECK(st.coeffs.r_star > 0.0);
        CHECK(st.coeffs.r_star < 1.0);
        CHECK(st.coeffs.alpha_star > 0.0);
        CHECK(st.coeffs.beta_star_max >= 0.0);
    }
}

TEST_CASE("xi averages to zero along every admissible cycle") {
    SystemSpec spec = demo_autonomous_spec();
    for (const Seed& s : {Seed{0, 0, 0.25}, Seed{0, 0, 1.9}, Seed{1, 0, 1.14}, Seed{1, 1, 1.27},
                          Seed{-1, -1, -1.29}}) {
        auto st = make_stage(s, spec, 1024);
        CHECK(std::abs(st.beta.xi_mean) <= 1e-8);
        CHECK(st.beta.beta_samples[0] == doctest::Approx(0.0).epsilon(1e-12));
        // beta is periodic: the series evaluates equally at 0 and omega
        CHECK(std::abs(st.beta.beta_series(st.cycle.omega) - st.beta.beta_series(0.0)) <= 1e-10);
    }
}

TEST_CASE("class-0 beta matches its closed form") {
    SystemSpec spec = demo_autonomous_spec();
    for (const Seed& s : {Seed{0, 0, 0.3}, Seed{0, 0, 1.808}}) {
        auto st = make_stage(s, spec, 1024);
        double b = s.b;
        double sup = 0.0;
        for (int i = 0; i < st.cycle.size(); ++i) {
            double al = st.prof.alpha_samples[i];
            double b2 = b * b;
            double closed = (b2 * b2 - 2.0 * b2) / (al * al) - 2.5 / al +
                            (3.0 * b2 - 1.0) / (2.0 * std::pow(b * b2 - b, 2));
            sup = std::max(sup, std::abs(closed - st.beta.beta_samples[i]));
        }
        CHECK(sup <= 1e-8);
    }
}

TEST_CASE("pullback fields on the periodic demo match direct substitution") {
    SystemSpec spec = demo_periodic_spec(0);
    auto st = make_stage({0, 0, 1.808}, spec);
    auto pb = pullbacks(st.cycle, st.prof, st.beta, spec, 16);
    const double tau0 = -3.314, tau1 = -0.361, tau2 = 4.493;
    for (int i = 0; i < pb.R0.Nt; i += 3) {
        for (int j = 0; j < pb.R0.Nphi; j += 97) {
            double t = pb.R0.t_of(i);
            double C = st.cycle.C_samples[j], S = st.cycle.S_samples[j];
            double expect = st.cycle.dC_samples[j] *
                                (tau0 * (S + std::sin(t)) + tau1 * S * S * S +
                                 tau2 * (C * C * S + std::sin(t))) -
                            st.cycle.dS_samples[j] * std::cos(t);
            CHECK(pb.R0.at(i, j) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    // two-periodicity at the seams, via the spectral representation
    auto spec2 = Spectrum2::from_field(pb.R0);
    for (double t : {0.3, 4.0}) {
        CHECK(spec2(t, 0.0) == doctest::Approx(spec2(t, st.cycle.omega)).epsilon(1e-10));
        CHECK(spec2(t, 1.0) == doctest::Approx(spec2(t + spec.T, 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("autonomous pullback is time independent and vanishes where it must") {
    SystemSpec sa = demo_autonomous_spec();
    auto st = make_stage({0, 0, 1.808}, sa);
    auto pb = pullbacks(st.cycle, st.prof, st.beta, sa, 8);
    for (int j = 0; j < pb.R0.Nphi; j += 53)
        for (int i = 1; i < pb.R0.Nt; ++i)
            CHECK(pb.R0.at(i, j) == doctest::Approx(pb.R0.at(0, j)).epsilon(1e-14));
    // X0 = 0 and Y0(C, 0) = 0, so both forcings vanish at the S = 0 sample
    CHECK(pb.R0.at(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pb.Phi0.at(0, 0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("r-derivative assembly agrees with finite differences of the full field") {
    SystemSpec spec = demo_periodic_spec(0);
    spec.first_order.y_coeffs[{1, 0}] = TrigPoly{0.4, {{1, 0.2, 0.0}}};
    for (const Seed& s : {Seed{0, 0, 1.808}, Seed{1, 1, 1.27}}) {
        auto st = make_stage(s, spec);
        auto pb = pullbacks(st.cycle, st.prof, st.beta, spec, 16);
        const double h = 1e-5;
        for (int j = 0; j < st.cycle.size(); j += 61) {
            for (double t : {0.0, 1.7}) {
                double fd = (radial_rhs(st.cycle, st.coeffs, st.beta, spec, t, j, h, 0.0) -
                             radial_rhs(st.cycle, st.coeffs, st.beta, spec, t, j, -h, 0.0)) /
                            (2.0 * h);
                int it = static_cast<int>(std::round(t / spec.T * pb.Rr.Nt));
                double assembled = pb.Rr.at(it, j);
                if (std::abs(t - pb.Rr.t_of(it)) > 1e-12) continue;
                CHECK(std::abs(fd - assembled) <= 1e-6 * std::max(1.0, std::abs(assembled)));
            }
        }
    }
}

TEST_CASE("averaging kills the quadratic radial term") {
    SystemSpec sa = demo_autonomous_spec();
    for (const Seed& s : {Seed{0, 0, 1.808}, Seed{1, 0, 1.13}, Seed{1, 1, 1.27}}) {
        auto st = make_stage(s, sa, 1024);
        const double h = 1e-4;
        for (int j = 0; j < st.cycle.size(); j += 149) {
            auto c2 = [&](double step) {
                double fp = unperturbed_radial_rate(st.cycle, st.coeffs, st.beta, j, step);
                double fm = unperturbed_radial_rate(st.cycle, st.coeffs, st.beta, j, -step);
                return (fp + fm) / (2.0 * step * step);
            };
            double rich = (4.0 * c2(h / 2) - c2(h)) / 3.0;  // Richardson in h^2
            CHECK(std::abs(rich) <= 1e-6);
        }
    }
}

TEST_CASE("field decomposition splits into mean, hat and tilde") {
    SystemSpec spec = demo_periodic_spec(0);
    auto st = make_stage({1, 1, 1.27}, spec);
    auto pb = pullbacks(st.cycle, st.prof, st.beta, spec, 16);
    auto hat = pb.R0.hat_profile();
    double hat_mean = 0.0;
    for (double v : hat) hat_mean += v;
    CHECK(std::abs(hat_mean / hat.size()) <= 1e-12);
    auto tilde = pb.R0.tilde();
    for (double v : tilde.t_mean_profile) CHECK(std::abs(v) <= 1e-12);
    for (int i = 0; i < pb.R0.Nt; i += 5)
        for (int j = 0; j < pb.R0.Nphi; j += 101)
            CHECK(pb.R0.at(i, j) ==
                  doctest::Approx(pb.R0.mean + hat[j] + tilde.at(i, j)).epsilon(1e-12));
}

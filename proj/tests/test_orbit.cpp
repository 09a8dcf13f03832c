#include <doctest.h>

#include <cmath>

#include "gts/errors.hpp"
#include "gts/fourier.hpp"
#include "gts/orbit.hpp"

using namespace gts;

TEST_CASE("S branches at distinguished arguments") {
    // Turning value: a = (Csq-1)^2 makes both branches meet at 1.
    double Csq = 1.7;
    double a = (Csq - 1.0) * (Csq - 1.0);
    CHECK(s_branch(Csq, a, 0.5, +1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s_branch(Csq, a, 0.5, -1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s_branch(1.0, 0.5, 0.5, +1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s_branch(1.0, 0.5, 0.5, -1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(s_branch(3.0, 0.1, 0.5, +1), BranchDomain);
}

TEST_CASE("periods of the worked seeds fall in the reference windows") {
    CHECK(period_quadrature({0, 0, 1.805}, 0.5) > 3.81);
    CHECK(period_quadrature({0, 0, 1.805}, 0.5) < 3.94);
    double w1 = period_quadrature({1, 0, 1.133}, 0.5);
    CHECK(w1 > 13.25);
    CHECK(w1 < 14.05);
    double w2 = period_quadrature({1, 1, 1.271}, 0.5);
    CHECK(w2 > 5.99);
    CHECK(w2 < 6.29);
    double w3 = period_quadrature({1, 1, 1.301}, 0.5);
    CHECK(w3 > 7.72);
    CHECK(w3 < 8.49);
}

TEST_CASE("quadrature and return-map periods agree") {
    const Seed seeds[] = {{0, 0, 0.3},   {0, 0, 0.12},  {0, 0, 1.5},  {0, 0, 1.9},
                          {1, 0, 1.08},  {1, 0, 1.2},   {-1, 0, -1.13},
                          {1, 1, 1.15},  {1, -1, 1.27}, {-1, 1, -1.2}, {-1, -1, -1.301}};
    for (const Seed& s : seeds) {
        double wq = period_quadrature(s, 0.5);
        double wr = period_return_map(s, 0.5);
        CHECK(std::abs(wq - wr) <= 1e-6 * wq);
    }
    // another gamma
    double wq = period_quadrature({1, 0, 1.1}, 0.3);
    double wr = period_return_map({1, 0, 1.1}, 0.3);
    CHECK(std::abs(wq - wr) <= 1e-6 * wq);
}

TEST_CASE("parametrization starts at the seed and conserves the level") {
    Seed seed{0, 0, 1.808};
    auto cp = parametrize(seed, 0.5, 1024);
    CHECK(cp.C_samples[0] == 1.808);
    CHECK(cp.S_samples[0] == 0.0);
    // clockwise start: S decreases initially
    CHECK(cp.S_samples[1] < 0.0);
    for (int i = 0; i < cp.size(); i += 37)
        CHECK(std::abs(hamiltonian_level(cp.C_samples[i], cp.S_samples[i], 0.5) - cp.a) <= 1e-8);
}

TEST_CASE("quarter and half period crossings") {
    // Inner class-0 cycles pass through (0, u) a quarter period in.
    Seed si{0, 0, 0.3};
    auto cp = parametrize(si, 0.5, 256);
    auto e = extremals(si, 0.5);
    int q = cp.size() / 4;
    CHECK(std::abs(cp.C_samples[q]) < 1e-8);
    CHECK(cp.S_samples[q] == doctest::Approx(*e.u0_0i).epsilon(1e-8));

    Seed s1{1, 0, 1.13};
    auto cp1 = parametrize(s1, 0.5, 256);
    auto e1 = extremals(s1, 0.5);
    int h = cp1.size() / 2;
    CHECK(cp1.C_samples[h] == doctest::Approx(*e1.l1_0).epsilon(1e-8));
    CHECK(std::abs(cp1.S_samples[h]) < 1e-8);
}

TEST_CASE("outer class-0 extremal values match the sampled maxima") {
    Seed seed{0, 0, 1.7};
    auto cp = parametrize(seed, 0.5, 1024);
    auto e = extremals(seed, 0.5);
    auto cprof = FourierProfile::from_samples(cp.omega, cp.C_samples);
    auto sprof = FourierProfile::from_samples(cp.omega, cp.S_samples);
    double cmax = 0, smax = 0;
    for (int i = 0; i < 8192; ++i) {
        double phi = cp.omega * i / 8192;
        cmax = std::max(cmax, std::abs(cprof(phi)));
        smax = std::max(smax, std::abs(sprof(phi)));
    }
    CHECK(cmax == doctest::Approx(*e.r0_1e).epsilon(1e-6));
    CHECK(smax == doctest::Approx(*e.u0_1e).epsilon(1e-6));
    CHECK(cmax <= smax);
}

TEST_CASE("grid doubling leaves interpolated values put") {
    Seed seed{1, 1, 1.27};
    auto c1 = parametrize(seed, 0.5, 1024);
    auto c2 = parametrize(seed, 0.5, 2048);
    auto p1 = FourierProfile::from_samples(c1.omega, c1.C_samples);
    auto p2 = FourierProfile::from_samples(c2.omega, c2.C_samples);
    for (double phi : {0.4, 1.9, 3.3})
        CHECK(std::abs(p1(phi) - p2(phi)) <= 1e-7);
}

TEST_CASE("cycle Fourier coefficients decay geometrically") {
    for (const Seed& s : {Seed{0, 0, 1.808}, Seed{1, 0, 1.13}, Seed{1, 1, 1.27}}) {
        auto cp = parametrize(s, 0.5, 1024);
        auto prof = FourierProfile::from_samples(cp.omega, cp.C_samples);
        double q = fit_decay_ratio(prof.harmonic_amplitudes());
        CHECK(q > 0.0);
        CHECK(q < 1.0);
    }
}

TEST_CASE("moment integrals obey the reflection symmetries") {
    double g = 0.5;
    for (int m : {0, 1, 2})
        for (int n : {0, 1, 2}) {
            double j11 = moment_integral({1, 1, 1.27}, g, m, n);
            double jm11 = moment_integral({-1, 1, -1.27}, g, m, n);
            double j1m1 = moment_integral({1, -1, 1.27}, g, m, n);
            if (m % 2 == 0 && n % 2 == 0) {
                CHECK(j11 == doctest::Approx(jm11).epsilon(1e-9));
                CHECK(j11 == doctest::Approx(j1m1).epsilon(1e-9));
            }
            double sk = (m % 2 == 0) ? 1.0 : -1.0;
            double sl = (n % 2 == 0) ? 1.0 : -1.0;
            CHECK(jm11 == doctest::Approx(sk * j11).epsilon(1e-9));
            CHECK(j1m1 == doctest::Approx(sl * j11).epsilon(1e-9));
        }
    for (int m : {0, 2}) {
        double j = moment_integral({1, 0, 1.13}, g, m, 1);
        double jm = moment_integral({-1, 0, -1.13}, g, m, 1);
        CHECK(j == doctest::Approx(jm).epsilon(1e-9));
    }
}

TEST_CASE("parametrize validates its grid size") {
    CHECK_THROWS(parametrize({0, 0, 0.3}, 0.5, 100));
    CHECK_THROWS(parametrize({0, 0, 0.3}, 0.5, 32));
}

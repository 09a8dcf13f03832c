#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/json_io.hpp"
#include "gts/model.hpp"
#include "gts/verify.hpp"

using namespace gts;

TEST_CASE("level function values") {
    CHECK(hamiltonian_level(1.0, 1.0, 0.5) == 0.0);
    CHECK(hamiltonian_level(0.0, 0.0, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    // On the outer separatrix crossing of the abscissa axis the level is
    // gamma + (r_e^2 - 1)^2 = gamma + (1 - gamma) = 1 for every gamma.
    for (double g : {0.2, 0.5, 0.9}) {
        double re = separatrix_r_e(g);
        CHECK(hamiltonian_level(re, 0.0, g) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("unperturbed field values") {
    auto [a1, a2] = unperturbed_field(1.0, 1.0, 0.5);
    CHECK(a1 == 0.0);
    CHECK(a2 == 0.0);
    auto [b1, b2] = unperturbed_field(0.0, 1.0, 0.5);
    CHECK(b1 == 0.0);
    CHECK(b2 == 0.0);
    auto [c1, c2] = unperturbed_field(1.5, 0.0, 0.5);
    CHECK(c1 == 0.0);
    CHECK(c2 == doctest::Approx(-1.875).epsilon(1e-15));
}

TEST_CASE("perturbed field collapses at eps = 0 and scales with eps^nu") {
    SystemSpec spec = demo_periodic_spec(0);
    for (double x : {-1.3, 0.2, 1.8})
        for (double y : {-0.7, 0.0, 1.1}) {
            auto [fx, fy] = perturbed_field(0.33, x, y, 0.0, spec);
            auto [ux, uy] = unperturbed_field(x, y, spec.gamma);
            CHECK(fx == doctest::Approx(ux).epsilon(1e-15));
            CHECK(fy == doctest::Approx(uy).epsilon(1e-15));
        }
    SystemSpec fast = demo_periodic_spec(1);
    auto [fx, fy] = perturbed_field(0.7, 1.2, 0.4, 0.0, fast);
    CHECK(fx == 0.0);
    CHECK(fy == 0.0);

    // The autonomous demo has Y0(x, 0) = 0, so ydot keeps its unperturbed value.
    SystemSpec sa = demo_autonomous_spec();
    auto [gx, gy] = perturbed_field(0.0, 1.808, 0.0, 1e-3, sa);
    CHECK(gy == doctest::Approx(-(1.808 * 1.808 * 1.808 - 1.808)).epsilon(1e-15));
    (void)gx;
}

TEST_CASE("perturbed field is T-periodic in t") {
    SystemSpec spec = demo_periodic_spec(0);
    for (double t : {0.0, 0.4, 3.9}) {
        auto [fx1, fy1] = perturbed_field(t, 1.4, -0.3, 0.01, spec);
        auto [fx2, fy2] = perturbed_field(t + spec.T, 1.4, -0.3, 0.01, spec);
        CHECK(fx1 == doctest::Approx(fx2).epsilon(1e-13));
        CHECK(fy1 == doctest::Approx(fy2).epsilon(1e-13));
    }
}

TEST_CASE("domain guard") {
    SystemSpec spec = demo_periodic_spec(0);
    CHECK_THROWS_AS(perturbed_field(0.0, spec.sigma + 0.1, 0.0, 0.0, spec), DomainExceeded);
}

TEST_CASE("classification of the worked seeds") {
    CHECK(classify({0, 0, 0.2}, 0.5) == CycleClass::ZeroInner);
    CHECK(classify({0, 0, 1.808}, 0.5) == CycleClass::ZeroOuter);
    CHECK(classify({1, 1, 1.27}, 0.5) == CycleClass::Two);
    CHECK(classify({1, 0, 1.13}, 0.5) == CycleClass::One);
    // symmetry of classes 1 and 2 under (k,l,b) -> (-k,-l,-b)
    CHECK(classify({-1, 0, -1.13}, 0.5) == CycleClass::One);
    CHECK(classify({-1, -1, -1.27}, 0.5) == CycleClass::Two);
    CHECK_THROWS_AS(classify({0, 1, 0.5}, 0.5), InvalidSeed);
    CHECK_THROWS_AS(classify({0, 0, separatrix_r_i(0.5)}, 0.5), InvalidSeed);
    CHECK_THROWS_AS(classify({0, 0, 1.0}, 0.5), InvalidSeed);
}

TEST_CASE("separatrix constants at gamma = 1/2") {
    // r_i and r_e solve (C^2-1)^2 + gamma = 1 on the inner/outer side; that
    // geometric identity pins them independently of the closed forms.
    double ri = separatrix_r_i(0.5), re = separatrix_r_e(0.5);
    CHECK(hamiltonian_level(ri, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hamiltonian_level(re, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ri == doctest::Approx(std::sqrt(1.0 - std::sqrt(0.5))).epsilon(1e-15));
    CHECK(re == doctest::Approx(1.306).epsilon(5e-4));
    CHECK(r_sigma(0.5, std::sqrt(6.0)) ==
          doctest::Approx(std::sqrt(1.0 + std::sqrt(12.0))).epsilon(1e-15));
    CHECK(r_sigma(0.5, std::sqrt(6.0)) == doctest::Approx(2.1128).epsilon(1e-4));
}

TEST_CASE("extremal values satisfy the level equation") {
    Seed seed{0, 0, 1.808};
    auto e = extremals(seed, 0.5);
    CHECK(e.a == doctest::Approx(0.5 + std::pow(1.808 * 1.808 - 1.0, 2)).epsilon(1e-15));
    REQUIRE(e.r0_1e.has_value());
    REQUIRE(e.u0_1e.has_value());
    REQUIRE(e.u0_0e.has_value());
    // each turning value paired with its partner coordinate sits on the level set
    CHECK(hamiltonian_level(*e.r0_1e, 1.0, 0.5) == doctest::Approx(e.a).epsilon(1e-13));
    CHECK(hamiltonian_level(1.0, *e.u0_1e, 0.5) == doctest::Approx(e.a).epsilon(1e-13));
    CHECK(hamiltonian_level(0.0, *e.u0_0e, 0.5) == doctest::Approx(e.a).epsilon(1e-13));

    Seed s1{1, 0, 1.13};
    auto e1 = extremals(s1, 0.5);
    CHECK(hamiltonian_level(*e1.l1_0, 0.0, 0.5) == doctest::Approx(e1.a).epsilon(1e-13));
    CHECK(hamiltonian_level(*e1.l1_1, 1.0, 0.5) == doctest::Approx(e1.a).epsilon(1e-13));
    CHECK(hamiltonian_level(*e1.r1_1, 1.0, 0.5) == doctest::Approx(e1.a).epsilon(1e-13));

    Seed s2{1, 1, 1.27};
    auto e2 = extremals(s2, 0.5);
    CHECK(hamiltonian_level(*e2.l2_1, 1.0, 0.5) == doctest::Approx(e2.a).epsilon(1e-13));
    CHECK(hamiltonian_level(1.0, *e2.lo2_1, 0.5) == doctest::Approx(e2.a).epsilon(1e-13));
}

TEST_CASE("spec json round trip") {
    SystemSpec spec = demo_periodic_spec(1);
    spec.first_order.y_coeffs[{1, 1}] = TrigPoly{0.25, {{2, 0.1, -0.3}}};
    std::string text = spec_to_json(spec);
    SystemSpec back = spec_from_json(text);
    CHECK(back.gamma == spec.gamma);
    CHECK(back.nu == 1);
    CHECK(back.T == spec.T);
    CHECK(back.sigma == spec.sigma);
    CHECK(back.perturbation.y_coeffs.size() == spec.perturbation.y_coeffs.size());
    CHECK(back.first_order.y_coeffs.at({1, 1}).mean == 0.25);
    for (double t : {0.1, 2.0})
        CHECK(back.perturbation.eval_y(t, 1.2, 0.7, back.T) ==
              doctest::Approx(spec.perturbation.eval_y(t, 1.2, 0.7, spec.T)).epsilon(1e-15));
}

TEST_CASE("autonomous validation rejects time-dependent coefficients") {
    SystemSpec spec = demo_periodic_spec(0);
    spec.autonomous = true;
    CHECK_THROWS(spec.validate());
}

#include "gts/orbit.hpp"

#include <cmath>
#include <numbers>

#include "gts/errors.hpp"
#include "gts/ode.hpp"
#include "gts/quad.hpp"

namespace gts {

double s_branch(double Csq, double a, double gamma, int sign) {
    double rad = a - (Csq - 1.0) * (Csq - 1.0);
    if (rad < 0.0) {
        if (rad > -1e-12 * std::max(a, 1.0)) rad = 0.0;
        else throw BranchDomain("level radicand negative");
    }
    double inner = 1.0 + sign * std::sqrt(rad) / std::sqrt(gamma);
    if (inner < 0.0) {
        if (inner > -1e-12) inner = 0.0;
        else throw BranchDomain("branch radicand negative");
    }
    return std::sqrt(inner);
}

namespace {

// How an integration endpoint touches the level set: either the branch
// value S hits 1 (the discriminant vanishes) or S_- hits 0.
enum class EndKind { Regular, BranchesMeet, SMinusZero };

struct Piece {
    double lo = 0, hi = 0;
    int branch = -1;  // +1 or -1
    EndKind lo_kind = EndKind::Regular;
    EndKind hi_kind = EndKind::Regular;
};

struct LevelGeometry {
    double gamma = 0, a = 0, sqrt_a = 0, sqrt_gamma = 0;
    double r_plus = 0;   // sqrt(1 + sqrt(a)), outer zero of the discriminant
    double lm2 = 0;      // 1 - sqrt(a), squared inner zero (may be negative)
    double b_abs = 0;    // |b|, zero of S_- for classes 0 and 1
    double l10 = 0;      // second zero of S_- for class 1
};

// Discriminant a - (C^2-1)^2 in factored form, using endpoint distances to
// avoid cancellation where it vanishes.
double discriminant(const LevelGeometry& g, const Piece& p, double C, double dlo, double dhi) {
    double outer;  // r_plus^2 - C^2
    if (p.hi_kind == EndKind::BranchesMeet && p.hi == g.r_plus)
        outer = dhi * (g.r_plus + C);
    else
        outer = (g.r_plus - C) * (g.r_plus + C);
    double inner;  // C^2 - lm2
    if (p.lo_kind == EndKind::BranchesMeet && g.lm2 > 0.0) {
        double lm = std::sqrt(g.lm2);
        inner = dlo * (C + lm);
    } else {
        inner = C * C - g.lm2;
    }
    return outer * inner;
}

// gamma - discriminant = (C^2-1)^2 - (a-gamma), vanishing where S_- = 0.
double gamma_minus_disc(const LevelGeometry& g, const Piece& p, double C, double dlo, double dhi) {
    double root = 0.0, dist = 0.0;
    if (p.lo_kind == EndKind::SMinusZero) {
        root = p.lo;
        dist = dlo;
    } else if (p.hi_kind == EndKind::SMinusZero) {
        root = p.hi;
        dist = dhi;
    } else {
        return g.gamma - (g.a - (C * C - 1.0) * (C * C - 1.0));
    }
    // (C^2 - root^2)(C^2 + root^2 - 2), with the vanishing factor from dist.
    double f1 = dist * (C + root);
    if (p.hi_kind == EndKind::SMinusZero) f1 = -f1;  // C < root there
    double f2 = C * C + root * root - 2.0;
    return f1 * f2;
}

double branch_value(const LevelGeometry& g, const Piece& p, double C, double dlo, double dhi,
                    double* disc_out) {
    double D = std::max(discriminant(g, p, C, dlo, dhi), 0.0);
    if (disc_out) *disc_out = D;
    if (p.branch > 0) return std::sqrt(1.0 + std::sqrt(D) / g.sqrt_gamma);
    double G = std::max(gamma_minus_disc(g, p, C, dlo, dhi), 0.0);
    double s2 = G / (g.sqrt_gamma * (g.sqrt_gamma + std::sqrt(D)));
    return std::sqrt(s2);
}

LevelGeometry make_geometry(const Seed& seed, double gamma) {
    LevelGeometry g;
    g.gamma = gamma;
    g.a = level_for_seed(seed, gamma);
    g.sqrt_gamma = std::sqrt(gamma);
    g.b_abs = std::abs(seed.b);
    if (std::abs(seed.l) == 1) {
        // Class 2: the level is (b^2-1)^2 exactly, so the outer zero of the
        // discriminant is |b| itself; keep it exact.
        g.sqrt_a = g.b_abs * g.b_abs - 1.0;
        g.r_plus = g.b_abs;
        g.lm2 = 2.0 - g.b_abs * g.b_abs;
    } else {
        g.sqrt_a = std::sqrt(g.a);
        g.r_plus = std::sqrt(1.0 + g.sqrt_a);
        g.lm2 = 1.0 - g.sqrt_a;
    }
    if (std::abs(seed.l) == 0 && seed.k != 0) g.l10 = std::sqrt(2.0 - seed.b * seed.b);
    return g;
}

std::vector<Piece> arc_pieces(CycleClass cls, const LevelGeometry& g) {
    std::vector<Piece> ps;
    switch (cls) {
        case CycleClass::ZeroInner:
            ps.push_back({0.0, g.b_abs, -1, EndKind::Regular, EndKind::SMinusZero});
            break;
        case CycleClass::ZeroOuter:
            ps.push_back({0.0, g.r_plus, +1, EndKind::Regular, EndKind::BranchesMeet});
            ps.push_back({g.b_abs, g.r_plus, -1, EndKind::SMinusZero, EndKind::BranchesMeet});
            break;
        case CycleClass::One: {
            double lm = std::sqrt(g.lm2);
            ps.push_back({lm, g.l10, -1, EndKind::BranchesMeet, EndKind::SMinusZero});
            ps.push_back({lm, g.r_plus, +1, EndKind::BranchesMeet, EndKind::BranchesMeet});
            ps.push_back({g.b_abs, g.r_plus, -1, EndKind::SMinusZero, EndKind::BranchesMeet});
            break;
        }
        case CycleClass::Two: {
            double lm = std::sqrt(g.lm2);
            ps.push_back({lm, g.b_abs, -1, EndKind::BranchesMeet, EndKind::BranchesMeet});
            ps.push_back({lm, g.b_abs, +1, EndKind::BranchesMeet, EndKind::BranchesMeet});
            break;
        }
    }
    return ps;
}

double piece_multiplier(CycleClass cls) {
    switch (cls) {
        case CycleClass::ZeroInner:
        case CycleClass::ZeroOuter: return 4.0;
        case CycleClass::One: return 2.0;
        case CycleClass::Two: return 1.0;
    }
    return 0.0;
}

}  // namespace

double period_quadrature(const Seed& seed, double gamma, double rel_tol) {
    CycleClass cls = classify(seed, gamma);
    LevelGeometry g = make_geometry(seed, gamma);
    double total = 0.0;
    for (const Piece& p : arc_pieces(cls, g)) {
        auto f = [&](double C, double dlo, double dhi) {
            double D;
            double S = branch_value(g, p, C, dlo, dhi, &D);
            return 1.0 / (g.sqrt_gamma * S * std::sqrt(D));
        };
        total += integrate_de(f, p.lo, p.hi, rel_tol);
    }
    return piece_multiplier(cls) * total;
}

double moment_integral(const Seed& seed, double gamma, int m, int n, double rel_tol) {
    CycleClass cls = classify(seed, gamma);
    LevelGeometry g = make_geometry(seed, gamma);

    auto piece_integral = [&](const Piece& p, int c_power, int s_power) {
        auto f = [&](double C, double dlo, double dhi) {
            double S = branch_value(g, p, C, dlo, dhi, nullptr);
            double acc = 1.0;
            for (int i = 0; i < c_power; ++i) acc *= C;
            for (int i = 0; i < s_power; ++i) acc *= S;
            return acc;
        };
        return integrate_de(f, p.lo, p.hi, rel_tol);
    };

    int km = (seed.k == -1 && (m % 2) == 1) ? -1 : 1;
    switch (cls) {
        case CycleClass::ZeroInner: {
            Piece p{0.0, g.b_abs, -1, EndKind::Regular, EndKind::SMinusZero};
            return -piece_integral(p, 2 * m, 2 * n + 1);
        }
        case CycleClass::ZeroOuter: {
            Piece p1{0.0, g.r_plus, +1, EndKind::Regular, EndKind::BranchesMeet};
            Piece p2{g.b_abs, g.r_plus, -1, EndKind::SMinusZero, EndKind::BranchesMeet};
            return piece_integral(p1, 2 * m, 2 * n + 1) - piece_integral(p2, 2 * m, 2 * n + 1);
        }
        case CycleClass::One: {
            double lm = std::sqrt(g.lm2);
            Piece pl{lm, g.l10, -1, EndKind::BranchesMeet, EndKind::SMinusZero};
            Piece pu{lm, g.r_plus, +1, EndKind::BranchesMeet, EndKind::BranchesMeet};
            Piece pr{g.b_abs, g.r_plus, -1, EndKind::SMinusZero, EndKind::BranchesMeet};
            double j = -piece_integral(pl, m, 2 * n + 1) + piece_integral(pu, m, 2 * n + 1) -
                       piece_integral(pr, m, 2 * n + 1);
            return km * j;
        }
        case CycleClass::Two: {
            double lm = std::sqrt(g.lm2);
            Piece pm{lm, g.b_abs, -1, EndKind::BranchesMeet, EndKind::BranchesMeet};
            Piece pp{lm, g.b_abs, +1, EndKind::BranchesMeet, EndKind::BranchesMeet};
            double j = piece_integral(pp, m, n + 1) - piece_integral(pm, m, n + 1);
            int ln = ((n % 2) == 1 && seed.l == -1) ? -1 : 1;
            return ln * km * j;
        }
    }
    throw Error("unreachable");
}

namespace {

Rhs2 unperturbed_rhs(double gamma) {
    return [gamma](double, const State2& y) -> State2 {
        return {gamma * (y[1] * y[1] * y[1] - y[1]), -(y[0] * y[0] * y[0] - y[0])};
    };
}

}  // namespace

double period_return_map(const Seed& seed, double gamma) {
    classify(seed, gamma);  // validates the seed
    const double b = seed.b;
    const double l = seed.l;
    Rhs2 rhs = unperturbed_rhs(gamma);
    State2 y0{b, l};
    State2 f0 = rhs(0.0, y0);
    double s_dir = (f0[1] > 0) ? 1.0 : -1.0;  // crossing orientation at the seed
    double c_side = (seed.k == 0) ? 1.0 : ((b - seed.k > 0) ? 1.0 : -1.0);

    // Coarse period from the angular rate about (k, l).
    double rx = b - seed.k, ry = l - seed.l;
    double cross = std::abs(f0[1] * rx - f0[0] * ry);
    double coarse = 2.0 * std::numbers::pi * (rx * rx + ry * ry) / std::max(cross, 1e-12);
    double phi_cap = 10.0 * std::max(coarse, 4.0);

    OdeOptions opts;
    Dop853 solver(rhs, 0.0, y0, opts);
    double phi_prev = 0.0;
    State2 y_prev = y0;
    auto section = [&](const State2& y) { return y[1] - l; };

    while (solver.t() < phi_cap) {
        solver.step_toward(phi_cap);
        double g_prev = section(y_prev);
        double g_now = section(solver.y());
        bool armed = phi_prev > 1e-6;
        if (armed && g_prev * g_now <= 0.0 && g_prev != g_now) {
            // Refine by bisection with re-integration over the bracketing step.
            double ta = phi_prev, tb = solver.t();
            State2 ya = y_prev;
            for (int it = 0; it < 80 && (tb - ta) > 1e-13 * std::max(1.0, tb); ++it) {
                double tm = 0.5 * (ta + tb);
                State2 ym = integrate_to(rhs, ta, ya, tm, opts);
                if (section(ya) * section(ym) <= 0.0) {
                    tb = tm;
                } else {
                    ta = tm;
                    ya = ym;
                }
            }
            State2 yc = integrate_to(rhs, ta, ya, 0.5 * (ta + tb), opts);
            State2 fc = rhs(0.0, yc);
            bool orient_ok = fc[1] * s_dir > 0.0;
            bool side_ok = (yc[0] - seed.k) * c_side > 0.0;
            if (orient_ok && side_ok) return 0.5 * (ta + tb);
        }
        phi_prev = solver.t();
        y_prev = solver.y();
    }
    throw NoReturn("no section return within the period cap");
}

CycleParam parametrize(const Seed& seed, double gamma, int n_samples, double sigma) {
    if (n_samples < 64 || (n_samples & (n_samples - 1)) != 0)
        throw Error("n_samples must be a power of two, at least 64");
    classify(seed, gamma, sigma);

    CycleParam cp;
    cp.seed = seed;
    cp.gamma = gamma;
    cp.a = level_for_seed(seed, gamma);
    cp.omega = period_quadrature(seed, gamma);
    cp.phi_grid.resize(n_samples);
    cp.C_samples.resize(n_samples);
    cp.S_samples.resize(n_samples);
    cp.dC_samples.resize(n_samples);
    cp.dS_samples.resize(n_samples);

    Rhs2 rhs = unperturbed_rhs(gamma);
    Dop853 solver(rhs, 0.0, State2{seed.b, static_cast<double>(seed.l)});
    for (int i = 0; i < n_samples; ++i) {
        double phi = cp.omega * i / n_samples;
        solver.advance_to(phi);
        cp.phi_grid[i] = phi;
        double C = solver.y()[0], S = solver.y()[1];
        cp.C_samples[i] = C;
        cp.S_samples[i] = S;
        cp.dC_samples[i] = gamma * (S * S * S - S);
        cp.dS_samples[i] = -(C * C * C - C);
        if (std::isfinite(sigma) && (std::abs(C) >= sigma || std::abs(S) >= sigma))
            throw DomainExceeded("cycle leaves the sigma box");
    }
    solver.advance_to(cp.omega);
    double wrap = std::hypot(solver.y()[0] - seed.b, solver.y()[1] - seed.l);
    if (wrap > 1e-8) throw Error("cycle does not close up to 1e-8");
    for (int i = 0; i < n_samples; ++i) {
        double lvl = hamiltonian_level(cp.C_samples[i], cp.S_samples[i], gamma);
        if (std::abs(lvl - cp.a) > 1e-8) throw Error("level drift above 1e-8");
    }
    return cp;
}

}  // namespace gts

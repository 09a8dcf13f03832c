#include "gts/ode.hpp"

#include <algorithm>
#include <cmath>

#include "gts/detail/dop853_coeffs.hpp"
#include "gts/errors.hpp"

namespace gts {

namespace {
constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 10.0;
constexpr double kErrorExponent = -1.0 / 8.0;  // error estimator order 7
}  // namespace

Dop853::Dop853(Rhs2 rhs, double t0, const State2& y0, OdeOptions opts)
    : rhs_(std::move(rhs)), t_(t0), y_(y0), opts_(opts) {
    f_ = rhs_(t_, y_);
}

double Dop853::initial_step(double t_target) const {
    // Crude but safe: scale from the state/derivative magnitudes, then let
    // the controller adapt.
    double d0 = std::max(std::abs(y_[0]), std::abs(y_[1]));
    double d1 = std::max(std::abs(f_[0]), std::abs(f_[1]));
    double h = (d1 > 1e-12) ? 0.01 * (d0 + 1.0) / (d1 + 1e-12) : 1e-3;
    h = std::min(h, std::abs(t_target - t_));
    return std::max(h, 1e-10);
}

// One trial step of size h (signed).  Fills y_new/f_new, returns the scaled
// error norm (accept when < 1).
double Dop853::attempt_step(double h, State2& y_new, State2& f_new) {
    using detail::kDop853A;
    using detail::kDop853B;
    using detail::kDop853C;
    using detail::kDop853E3;
    using detail::kDop853E5;

    double K[13][2];
    K[0][0] = f_[0];
    K[0][1] = f_[1];
    for (int s = 1; s < 12; ++s) {
        double dy0 = 0.0, dy1 = 0.0;
        for (int j = 0; j < s; ++j) {
            dy0 += kDop853A[s][j] * K[j][0];
            dy1 += kDop853A[s][j] * K[j][1];
        }
        State2 ys{y_[0] + h * dy0, y_[1] + h * dy1};
        State2 ks = rhs_(t_ + kDop853C[s] * h, ys);
        K[s][0] = ks[0];
        K[s][1] = ks[1];
    }
    double acc0 = 0.0, acc1 = 0.0;
    for (int j = 0; j < 12; ++j) {
        acc0 += kDop853B[j] * K[j][0];
        acc1 += kDop853B[j] * K[j][1];
    }
    y_new = {y_[0] + h * acc0, y_[1] + h * acc1};
    f_new = rhs_(t_ + h, y_new);
    K[12][0] = f_new[0];
    K[12][1] = f_new[1];

    double err5[2] = {0.0, 0.0}, err3[2] = {0.0, 0.0};
    for (int j = 0; j < 13; ++j) {
        err5[0] += kDop853E5[j] * K[j][0];
        err5[1] += kDop853E5[j] * K[j][1];
        err3[0] += kDop853E3[j] * K[j][0];
        err3[1] += kDop853E3[j] * K[j][1];
    }
    double e5 = 0.0, e3 = 0.0;
    for (int i = 0; i < 2; ++i) {
        double scale = opts_.atol + std::max(std::abs(y_[i]), std::abs(y_new[i])) * opts_.rtol;
        double a5 = err5[i] / scale, a3 = err3[i] / scale;
        e5 += a5 * a5;
        e3 += a3 * a3;
    }
    if (e5 == 0.0 && e3 == 0.0) return 0.0;
    double denom = e5 + 0.01 * e3;
    return std::abs(h) * e5 / std::sqrt(denom * 2.0);
}

bool Dop853::step_toward(double t_target) {
    if (t_target == t_) return false;
    direction_ = (t_target > t_) ? 1 : -1;
    if (h_abs_ == 0.0) h_abs_ = initial_step(t_target);

    double remaining = std::abs(t_target - t_);
    if (remaining <= 0.0) return false;

    bool rejected = false;
    for (int iter = 0; iter < 200; ++iter) {
        double h_abs = std::min({h_abs_, opts_.max_step, remaining});
        double min_step = 16.0 * std::abs(t_) * 2.220446049250313e-16 + 1e-300;
        if (h_abs < min_step && remaining > min_step) throw StepFail("step size underflow");
        double h = h_abs * direction_;
        bool hits_target = (h_abs >= remaining);
        if (hits_target) h = t_target - t_;

        State2 y_new, f_new;
        double err = attempt_step(h, y_new, f_new);
        if (err < 1.0) {
            double factor = (err == 0.0) ? kMaxFactor
                                         : std::min(kMaxFactor, kSafety * std::pow(err, kErrorExponent));
            if (rejected) factor = std::min(1.0, factor);
            h_abs_ = h_abs * factor;
            t_ = hits_target ? t_target : t_ + h;
            y_ = y_new;
            f_ = f_new;
            ++n_steps_;
            return !hits_target;
        }
        h_abs_ = h_abs * std::max(kMinFactor, kSafety * std::pow(err, kErrorExponent));
        rejected = true;
    }
    throw StepFail("step repeatedly rejected");
}

void Dop853::advance_to(double t_target) {
    while (step_toward(t_target)) {
    }
}

State2 integrate_to(const Rhs2& rhs, double t0, const State2& y0, double t1, OdeOptions opts) {
    Dop853 solver(rhs, t0, y0, opts);
    solver.advance_to(t1);
    return solver.y();
}

}  // namespace gts

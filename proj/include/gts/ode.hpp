#pragma once

#include <array>
#include <functional>
#include <vector>

namespace gts {

using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double, const State2&)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 1e100;
};

// Adaptive explicit Runge-Kutta integrator of order 8 with 5th/3rd order
// embedded error estimate (the classic DOP853 pair).  Plain stepping only:
// callers that need solution values at interior points integrate exactly to
// them, which keeps a single accuracy-controlled code path.
class Dop853 {
public:
    Dop853(Rhs2 rhs, double t0, const State2& y0, OdeOptions opts = {});

    double t() const { return t_; }
    const State2& y() const { return y_; }
    const State2& f() const { return f_; }  // rhs at current point
    long n_steps() const { return n_steps_; }

    // Advance exactly to t_target (forward or backward relative to t0).
    void advance_to(double t_target);

    // Take one accepted adaptive step toward t_target without passing it.
    // Returns false once t_target is reached.
    bool step_toward(double t_target);

private:
    double attempt_step(double h, State2& y_new, State2& f_new);
    double initial_step(double t_target) const;

    Rhs2 rhs_;
    double t_;
    State2 y_;
    State2 f_;
    OdeOptions opts_;
    double h_abs_ = 0.0;
    int direction_ = 1;
    long n_steps_ = 0;
};

// Convenience: integrate from (t0, y0) to t1 and return the final state.
State2 integrate_to(const Rhs2& rhs, double t0, const State2& y0, double t1,
                    OdeOptions opts = {});

}  // namespace gts

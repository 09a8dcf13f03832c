#include "gts/quad.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "gts/errors.hpp"

namespace gts {

namespace {
// One shared integrator per thread; tanh_sinh caches its abscissas.
boost::math::quadrature::tanh_sinh<double>& de_rule() {
    static thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
    return rule;
}
}  // namespace

double integrate_de(const SingularIntegrand& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // boost's two-argument form passes the distance to the nearest endpoint
    // (the abscissa x itself may round onto the endpoint); recover both
    // distances from it.
    double mid = 0.5 * (a + b);
    auto g = [&](double x, double xc) {
        double dlo, dhi;
        if (x < mid) {
            dlo = std::abs(xc);
            dhi = b - x;
        } else {
            dhi = std::abs(xc);
            dlo = x - a;
        }
        return f(x, dlo, dhi);
    };
    double err = 0.0, l1 = 0.0;
    double val = de_rule().integrate(g, a, b, rel_tol, &err, &l1);
    if (!(std::isfinite(val)))
        throw QuadratureFail("tanh-sinh produced a non-finite value");
    double scale = std::max(l1, 1e-300);
    if (err / scale > 100.0 * rel_tol)
        throw QuadratureFail("tanh-sinh failed to reach requested tolerance");
    return sign * val;
}

double integrate_de(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    return integrate_de([&](double x, double, double) { return f(x); }, a, b, rel_tol);
}

}  // namespace gts

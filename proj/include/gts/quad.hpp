#pragma once

#include <functional>

namespace gts {

// Integrand for singular quadrature.  Receives the abscissa x and the
// distances to the two interval endpoints, computed without cancellation,
// so inverse-square-root endpoint factors can be evaluated stably.
using SingularIntegrand = std::function<double(double x, double dist_lo, double dist_hi)>;

// Tanh-sinh (double exponential) quadrature on (a, b).  Handles integrable
// endpoint singularities such as |x-a|^(-1/2).  Throws QuadratureFail when
// the requested relative tolerance cannot be certified.
double integrate_de(const SingularIntegrand& f, double a, double b, double rel_tol = 1e-10);

// Same for smooth integrands given as f(x).
double integrate_de(const std::function<double(double)>& f, double a, double b,
                    double rel_tol = 1e-10);

}  // namespace gts

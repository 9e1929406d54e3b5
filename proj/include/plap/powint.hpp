// Cancellation-safe closed-form integrals of |t|^q and |t|^q sgn(t) against
// quadratic weights. These kernels back the per-triangle integration of |u|^p
// and |u|^{p-2} u phi for piecewise-linear u, where naive use of the
// divided-difference formula loses all digits once vertex values come close.
#pragma once

namespace plap {

// Integral of |t|^q * sgn(t)^s * w(t) over [x, y] for q > -1, s in {0, 1},
// where the weight is given around the interval midpoint m = (x + y) / 2:
//   w(t) = w0 + w1 (t - m) + w2 (t - m)^2.
// Exact antiderivatives are used on well-separated intervals; intervals that
// are narrow relative to their distance from 0 switch to a binomial series
// about the midpoint. Intervals straddling 0 are split there first.
double integrate_abs_pow(double q, int s, double x, double y, double w0,
                         double w1, double w2);

}  // namespace plap

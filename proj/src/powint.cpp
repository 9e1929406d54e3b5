#include "plap/powint.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace plap {
namespace {

inline double sgn(double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); }

// Antiderivative of |t|^q sgn(t)^s t^k:  sgn(t)^{s+k+1} |t|^{q+k+1} / (q+k+1).
inline double antiderivative(double q, int s, int k, double t) {
  if (t == 0.0) return 0.0;
  const double mag = std::pow(std::abs(t), q + k + 1) / (q + k + 1);
  return ((s + k + 1) % 2 != 0) ? sgn(t) * mag : mag;
}

// Direct evaluation on an interval not straddling 0, weight in global form
// w(t) = c0 + c1 t + c2 t^2. Safe when y - x is not small against |x|, |y|.
double direct_piece(double q, int s, double x, double y, double c0, double c1,
                    double c2) {
  double r = 0.0;
  if (c0 != 0.0) r += c0 * (antiderivative(q, s, 0, y) - antiderivative(q, s, 0, x));
  if (c1 != 0.0) r += c1 * (antiderivative(q, s, 1, y) - antiderivative(q, s, 1, x));
  if (c2 != 0.0) r += c2 * (antiderivative(q, s, 2, y) - antiderivative(q, s, 2, x));
  return r;
}

// Series about the midpoint: t = m + d xi, xi in [-1, 1], rho = d / m,
//   int (1 + rho xi)^q xi^j dxi = sum_k binom(q, k) rho^k 2/(k+j+1), k+j even.
double series_piece(double q, int s, double m, double d, double w0, double w1,
                    double w2) {
  const double rho = d / m;
  const double b0 = w0, b1 = w1 * d, b2 = w2 * d * d;
  double coeff = 1.0;  // binom(q, k) rho^k
  double acc = 0.0;
  for (int k = 0; k <= 60; ++k) {
    double term = 0.0;
    if (k % 2 == 0) {
      term += b0 * 2.0 / (k + 1);
      term += b2 * 2.0 / (k + 3);
    } else {
      term += b1 * 2.0 / (k + 2);
    }
    acc += coeff * term;
    const double next = coeff * (q - k) / (k + 1) * rho;
    if (std::abs(next) * 2.0 < 1e-17 * std::abs(acc) + 1e-300) break;
    coeff = next;
  }
  const double scale = d * std::pow(std::abs(m), q);
  const double sign = (s % 2 != 0) ? sgn(m) : 1.0;
  return sign * scale * acc;
}

// One piece with x, y of the same (loose) sign, weight centered at mid of the
// ORIGINAL interval; m0 is that original midpoint.
double same_sign_piece(double q, int s, double x, double y, double m0,
                       double w0, double w1, double w2) {
  if (x == y) return 0.0;
  const double width = y - x;
  const double big = std::max(std::abs(x), std::abs(y));
  const double m = 0.5 * (x + y);
  if (x != 0.0 && y != 0.0 && width < 0.25 * big) {
    // Re-center the weight at this piece's midpoint.
    const double dm = m - m0;
    const double v0 = w0 + dm * (w1 + dm * w2);
    const double v1 = w1 + 2.0 * dm * w2;
    return series_piece(q, s, m, 0.5 * width, v0, v1, w2);
  }
  // Expand the weight to global coefficients; bounded cancellation here since
  // the interval is wide relative to its magnitudes.
  const double c0 = w0 - m0 * (w1 - m0 * w2);
  const double c1 = w1 - 2.0 * m0 * w2;
  return direct_piece(q, s, x, y, c0, c1, w2);
}

}  // namespace

double integrate_abs_pow(double q, int s, double x, double y, double w0,
                         double w1, double w2) {
  if (!(q > -1.0)) throw std::invalid_argument("integrate_abs_pow: q must be > -1");
  if (x == y) return 0.0;
  double flip = 1.0;
  if (x > y) {
    std::swap(x, y);
    flip = -1.0;
  }
  const double m0 = 0.5 * (x + y);
  double r;
  if (x < 0.0 && y > 0.0) {
    r = same_sign_piece(q, s, x, 0.0, m0, w0, w1, w2) +
        same_sign_piece(q, s, 0.0, y, m0, w0, w1, w2);
  } else {
    r = same_sign_piece(q, s, x, y, m0, w0, w1, w2);
  }
  return flip * r;
}

}  // namespace plap

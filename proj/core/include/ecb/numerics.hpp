#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "ecb/errors.hpp"

namespace ecb {

struct MinPoint {
  double x;
  double value;
};

// Golden-section minimization on [a, b]. Stops when the bracket width drops
// below rtol*(|x1|+|x2|) + atol. The function is evaluated as given; +inf
// values are allowed and simply lose comparisons.
template <typename F>
MinPoint golden_min(F&& f, double a, double b, double rtol, double atol = 0.0) {
  constexpr double R = 0.6180339887498949;  // (sqrt(5)-1)/2
  constexpr double C = 1.0 - R;
  double x1 = a + C * (b - a);
  double x2 = a + R * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > rtol * (std::fabs(x1) + std::fabs(x2)) + atol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = a + C * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + R * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? MinPoint{x1, f1} : MinPoint{x2, f2};
}

// Brent's method for f(x) = 0 on a bracketing interval [a, b] with
// f(a)*f(b) <= 0. `ftol` allows early exit on the residual.
template <typename F>
double brent_root(F&& f, double a, double b, double xtol, double ftol = 0.0,
                  int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw DomainError("brent_root: interval does not bracket a root");
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0 || std::fabs(fb) <= ftol) return b;
    if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qa = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa;
      d = e = b - a;
    }
  }
  return b;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw DomainError("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> out(n);
  const double la = std::log(lo), lb = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

// splitmix64; used to derive independent per-trial seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace ecb

#ifndef ITP_MINIMIZE_HPP
#define ITP_MINIMIZE_HPP

#include <cmath>
#include <utility>

namespace itp {

/// Golden-section minimization on [lo, hi].  Used to polish a grid minimum
/// within one grid step; tracks the best sampled value so the result never
/// exceeds the bracket endpoints.
template <class F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, int iters = 80) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best_x = f1 < f2 ? x1 : x2;
  double best_f = f1 < f2 ? f1 : f2;
  for (int it = 0; it < iters && b - a > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    if (f1 < best_f) { best_f = f1; best_x = x1; }
    if (f2 < best_f) { best_f = f2; best_x = x2; }
  }
  return {best_x, best_f};
}

}  // namespace itp

#endif

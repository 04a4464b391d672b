#include "itp/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "itp/parallel.hpp"
#include "itp/types.hpp"

namespace itp {

namespace {

using Complex = std::complex<double>;

constexpr double kContourZeroTol = 1e-12;
constexpr int kSideCap = 1 << 16;

struct WindingResult {
  double winding = 0.0;
  bool phase_ok = false;
};

std::vector<Complex> contour_nodes(const Rectangle& r, int per_side) {
  std::vector<Complex> nodes;
  nodes.reserve(4 * per_side);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(r.re0 + r.width() * i / per_side, r.im0);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(r.re1, r.im0 + r.height() * i / per_side);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(r.re1 - r.width() * i / per_side, r.im1);
  for (int i = 0; i < per_side; ++i)
    nodes.emplace_back(r.re0, r.im1 - r.height() * i / per_side);
  return nodes;
}

WindingResult winding_once(const ComplexMap& f, const Rectangle& rect, int per_side) {
  const std::vector<Complex> nodes = contour_nodes(rect, per_side);
  std::vector<Complex> vals(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { vals[i] = f(nodes[i]); });
  for (const Complex& v : vals)
    if (std::abs(v) <= kContourZeroTol)
      throw std::runtime_error("zero on contour - perturb rectangle");

  WindingResult out;
  out.phase_ok = true;
  double total = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const Complex a = vals[i];
    const Complex b = vals[(i + 1) % vals.size()];
    const double dphi = std::arg(b / a);
    if (std::abs(dphi) >= kPi / 2) {
      out.phase_ok = false;
      return out;
    }
    total += dphi;
  }
  out.winding = total / (2.0 * kPi);
  return out;
}

/// Winding with the doubling schedule; throws past the per-side cap.
double winding_number(const ComplexMap& f, const Rectangle& rect, int start_per_side) {
  for (int n = start_per_side; n <= kSideCap; n *= 2) {
    const WindingResult w = winding_once(f, rect, n);
    if (w.phase_ok) return w.winding;
  }
  throw std::runtime_error("count_zeros: contour resolution cap exceeded");
}

int winding_to_count(double w) {
  const double rounded = std::round(w);
  if (std::abs(w - rounded) >= 0.25)
    throw std::runtime_error("count_zeros: winding number is not close to an integer");
  if (rounded < -0.5) throw std::runtime_error("count_zeros: negative winding (not analytic?)");
  return static_cast<int>(rounded);
}

Complex newton_polish(const ComplexMap& f, Complex z, const Rectangle& rect, bool& converged) {
  converged = false;
  const double leash = 3.0 * std::max(rect.width(), rect.height());
  for (int it = 0; it < 80; ++it) {
    const double h = 1e-6 * (1.0 + std::abs(z));
    const Complex fz = f(z);
    const Complex d = (f(z + h) - f(z - h)) / (2.0 * h);
    if (std::abs(d) == 0.0) return z;
    const Complex dz = fz / d;
    z -= dz;
    if (!rect.contains(z, leash)) return z;
    if (std::abs(dz) < 1e-13 * (1.0 + std::abs(z))) {
      converged = true;
      return z;
    }
  }
  return z;
}

/// Seed for the singleton-box polish: the smallest |f| over an interior
/// probe grid, which keeps Newton in the basin of the zero the winding
/// number certified.
Complex probe_seed(const ComplexMap& f, const Rectangle& rect) {
  Complex best(0.5 * (rect.re0 + rect.re1), 0.5 * (rect.im0 + rect.im1));
  double best_val = 1e300;
  const int pn = 7;
  for (int i = 0; i < pn; ++i)
    for (int j = 0; j < pn; ++j) {
      const Complex z(rect.re0 + rect.width() * (i + 0.5) / pn,
                      rect.im0 + rect.height() * (j + 0.5) / pn);
      const double v = std::abs(f(z));
      if (v < best_val) {
        best_val = v;
        best = z;
      }
    }
  return best;
}

void locate_zeros(const ComplexMap& f, const Rectangle& rect, int count, int per_side,
                  int depth, std::vector<Complex>& out) {
  if (count == 0) return;
  const double span = std::max(rect.width(), rect.height());
  if (span < 1e-8 || depth > 60) {
    // unresolvable cluster or a genuine multiple zero; report the center
    // with multiplicity
    const Complex center(0.5 * (rect.re0 + rect.re1), 0.5 * (rect.im0 + rect.im1));
    for (int i = 0; i < count; ++i) out.push_back(center);
    return;
  }
  if (count == 1) {
    bool converged = false;
    const Complex z = newton_polish(f, probe_seed(f, rect), rect, converged);
    if (converged && rect.contains(z, 1e-10 * (1.0 + span))) {
      out.push_back(z);
      return;
    }
    // fall through to bisection when Newton drifts out of the box
  }

  const bool split_re = rect.width() >= rect.height();
  const double fractions[] = {0.5, 0.53, 0.47, 0.57, 0.43, 0.61};
  for (double frac : fractions) {
    Rectangle a = rect, b = rect;
    if (split_re) {
      const double mid = rect.re0 + frac * rect.width();
      a.re1 = mid;
      b.re0 = mid;
    } else {
      const double mid = rect.im0 + frac * rect.height();
      a.im1 = mid;
      b.im0 = mid;
    }
    try {
      const int ca = winding_to_count(winding_number(f, a, per_side));
      const int cb = winding_to_count(winding_number(f, b, per_side));
      if (ca + cb != count)
        throw std::runtime_error("count_zeros: subdivision count mismatch");
      locate_zeros(f, a, ca, per_side, depth + 1, out);
      locate_zeros(f, b, cb, per_side, depth + 1, out);
      return;
    } catch (const std::runtime_error& e) {
      // a zero on (or hugging) the split line defeats the phase criterion;
      // move the line and retry
      const std::string what = e.what();
      if (what.find("zero on contour") == std::string::npos &&
          what.find("resolution cap") == std::string::npos)
        throw;
    }
  }
  throw std::runtime_error("count_zeros: could not isolate zeros (split lines all hit zeros)");
}

}  // namespace

ZeroCount count_zeros(const ComplexMap& f, const Rectangle& rect, int contour_resolution,
                      bool refine) {
  if (contour_resolution < 4)
    throw std::invalid_argument("count_zeros: contour resolution must be >= 4");
  if (!(rect.width() > 0) || !(rect.height() > 0))
    throw std::invalid_argument("count_zeros: empty rectangle");

  ZeroCount out;
  out.rectangle = rect;
  const double w = winding_number(f, rect, contour_resolution);
  out.winding_residual = std::abs(w - std::round(w));
  out.count = winding_to_count(w);

  if (refine && out.count > 0) {
    locate_zeros(f, rect, out.count, std::max(64, contour_resolution / 4), 0,
                 out.refined_zeros);
    std::sort(out.refined_zeros.begin(), out.refined_zeros.end(),
              [](const Complex& a, const Complex& b) {
                return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
              });
    if (static_cast<int>(out.refined_zeros.size()) != out.count)
      throw std::runtime_error("count_zeros: refinement found a different zero count");
  }
  return out;
}

}  // namespace itp

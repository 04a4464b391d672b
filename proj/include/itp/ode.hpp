#ifndef ITP_ODE_HPP
#define ITP_ODE_HPP

#include <array>
#include <complex>
#include <functional>

namespace itp {

using OdeState = std::array<std::complex<double>, 2>;
using OdeRhs = std::function<void(double, const OdeState&, OdeState&)>;

/// Adaptive Dormand-Prince 5(4) for a two-component complex system.
/// Mixed absolute/relative error control at the given tolerance; step-size
/// underflow raises.
OdeState integrate_rk45(const OdeRhs& rhs, double t0, double t1, OdeState y0,
                        double tol = 1e-11);

}  // namespace itp

#endif

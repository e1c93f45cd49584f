#pragma once

#include <functional>

#include "rom/types.hpp"

namespace rom {

// Abstract autonomous discrete dynamical system x' = F(x, mu).
// One explicit or implicit Euler step realizes the discrete transition map.
struct DiscreteModel {
    int dim = 0;
    Vec params;  // parameter vector mu (may be empty)
    std::function<Vec(const Vec&)> rhs;
    std::function<Mat(const Vec&)> rhs_jacobian;
};

// y = x + h F(x)
Vec step_explicit(const DiscreteModel& model, const Vec& x, double h);

// Solve y = x + h F(y) by Newton, initialized at x; system matrix I - h dF/dx.
Vec step_implicit(const DiscreteModel& model, const Vec& x, double h,
                  const NewtonSettings& settings = {});

// Generic Newton iteration; returns y with ||residual(y)||_2 <= settings.tol.
// iterations_out, when non-null, receives the number of iterations performed.
Vec newton_solve(const std::function<Vec(const Vec&)>& residual,
                 const std::function<Mat(const Vec&)>& jacobian, const Vec& guess,
                 const NewtonSettings& settings, int* iterations_out = nullptr);

Trajectory integrate(const DiscreteModel& model, const Vec& x0, const TimeGrid& grid,
                     Scheme scheme, const NewtonSettings& settings = {});

}  // namespace rom

#pragma once

#include "rom/model.hpp"
#include "rom/types.hpp"

namespace rom {

// 1D viscous Burgers on [0, L] with homogeneous Dirichlet boundaries,
// semi-discretised as u' = -u .* (d1 u) + viscosity * (d2 u) on the
// interior points (the known boundary zeros are eliminated from the state).
struct BurgersModel {
    int n_grid = 0;     // total grid points including boundaries
    int dim = 0;        // interior points Ns = n_grid - 2
    double length = 0;  // L
    double dx = 0;      // L / (n_grid - 1)
    double viscosity = 0;
    Mat d1;  // central first derivative, Dirichlet closure
    Mat d2;  // central second derivative, Dirichlet closure
};

BurgersModel build_burgers(int n_grid, double length, double viscosity);

Vec burgers_rhs(const BurgersModel& model, const Vec& u);

// -diag(d1 u) - diag(u) d1 + viscosity * d2
Mat burgers_jacobian(const BurgersModel& model, const Vec& u);

// Interior coordinates x_i = i * dx, i = 1..dim.
Vec interior_coordinates(const BurgersModel& model);

// Degree-7 polynomial initial profile
//   p(x) = a * x^2 (L-x)^2 (x-r1)(x-r2)(x-r3),
// sampled at the interior coordinates; vanishes at both boundaries.
Vec initial_condition(const BurgersModel& model, double a, double r1, double r2, double r3);

// Default profile: roots 1.2, 1.5, 2.0 with the amplitude normalised so
// max |p| = 1 on [0, L] and p is positive near x = 0.
Vec initial_condition(const BurgersModel& model);

// Amplitude for which max |p| = 1 and sign(p) near x = 0 equals `sign`
// (+1 or -1), for the given roots; sampled densely on [0, L].
double normalized_ic_amplitude(const BurgersModel& model, double r1, double r2, double r3,
                               double peak, double sign);

// Wrap as the abstract interface; copies the (small, dense) operators.
DiscreteModel as_discrete_model(const BurgersModel& model);

}  // namespace rom

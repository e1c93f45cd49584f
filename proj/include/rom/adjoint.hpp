#pragma once

#include <functional>

#include "rom/burgers.hpp"
#include "rom/reduced_model.hpp"
#include "rom/types.hpp"

namespace rom {

// Additive quantity of interest Q(x) = sum_i r_i(x_i) over a trajectory of
// num_steps + 1 states, with per-step terms and their state gradients.
struct QuantityOfInterest {
    int num_steps = 0;  // Nt
    std::function<double(int, const Vec&)> term;         // r_i(x)
    std::function<Vec(int, const Vec&)> term_gradient;   // d r_i / d x
};

// Terminal-time energy over the sensor window: r_Nt(u) = sum_{j in S} u_j^2
// with S the interior indices whose coordinates lie in [lo, hi] (inclusive).
// r_i vanishes for i < Nt.
QuantityOfInterest make_burgers_qoi(const BurgersModel& model, int num_steps,
                                    double lo = 0.05, double hi = 0.1);

// 0-based state indices whose coordinates fall inside [lo, hi].
std::vector<int> sensor_index_set(const BurgersModel& model, double lo = 0.05,
                                  double hi = 0.1);

struct AdjointTrajectory {
    std::vector<Vec> multipliers;  // lambda_0 .. lambda_Nt in forward index order
    Scheme scheme = Scheme::implicit_euler;
};

double qoi_eval(const QuantityOfInterest& q, const Trajectory& traj);

// Backward recursions paired with the forward steppers; both satisfy
// lambda_Nt = -grad r_Nt(x_Nt) exactly.
//   explicit:  lambda_i = (I + h J(x_i))^T lambda_{i+1} - grad r_i(x_i)
//   implicit:  lambda_i = (I - h J(x_{i+1}))^-T lambda_{i+1} - grad r_i(x_i)
AdjointTrajectory full_adjoint_explicit(const DiscreteModel& model, const Trajectory& traj,
                                        const QuantityOfInterest& q, double h);
AdjointTrajectory full_adjoint_implicit(const DiscreteModel& model, const Trajectory& traj,
                                        const QuantityOfInterest& q, double h);

// Reduced adjoint evaluated on the lifted reduced trajectory only. The
// explicit recursion projects the lifted-space transition transpose through
// the basis; the implicit one mirrors the full recursion with the reduced
// Jacobian of the matching forward stepper.
AdjointTrajectory reduced_adjoint(const ReducedModel& rom, const ReducedTrajectory& rtraj,
                                  const QuantityOfInterest& q, double h, Scheme scheme);

// dQ/dx_0 = -lambda_0
Vec qoi_gradient(const AdjointTrajectory& adj);

}  // namespace rom

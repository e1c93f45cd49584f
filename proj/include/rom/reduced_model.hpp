#pragma once

#include <optional>

#include "rom/deim.hpp"
#include "rom/model.hpp"
#include "rom/pod.hpp"

namespace rom {

// POD-Galerkin reduced model, optionally with DEIM treatment of the
// nonlinear term. Without DEIM the reduced right-hand side is U^T F(U x~);
// with DEIM it is  projector * P^T F(U x~).
struct ReducedModel {
    PodBasis basis;
    std::optional<DeimApproximation> deim;  // absent => plain Galerkin
    DiscreteModel full_model;
    int k = 0;
    std::optional<int> m;
};

struct ReducedTrajectory {
    std::vector<Vec> states;  // x~_0 .. x~_Nt, length k each
    TimeGrid grid;
};

ReducedModel make_reduced_model(const PodBasis& basis, const DiscreteModel& full_model);
ReducedModel make_reduced_model(const PodBasis& basis, const DiscreteModel& full_model,
                                const DeimApproximation& deim);

// Reduced right-hand side and its k x k Jacobian, both evaluated on the
// lifted state U x~ only.
Vec reduced_rhs(const ReducedModel& rom, const Vec& xr);
Mat reduced_jacobian(const ReducedModel& rom, const Vec& xr);

Vec rom_step_explicit(const ReducedModel& rom, const Vec& xr, double h);
Vec rom_step_implicit(const ReducedModel& rom, const Vec& xr, double h,
                      const NewtonSettings& settings = {});

ReducedTrajectory integrate_rom(const ReducedModel& rom, const Vec& xr0, const TimeGrid& grid,
                                Scheme scheme, const NewtonSettings& settings = {});

// U x~_i for every state of a reduced trajectory.
Trajectory lift_trajectory(const ReducedModel& rom, const ReducedTrajectory& rtraj);

}  // namespace rom

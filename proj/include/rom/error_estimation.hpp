#pragma once

#include "rom/adjoint.hpp"
#include "rom/reduced_model.hpp"
#include "rom/types.hpp"

namespace rom {

// High-fidelity one-step defects of a lifted reduced trajectory. Slot 0
// holds the initial projection error x_0 - x^_0; slots 1..Nt hold phi_i.
struct ResidualSeries {
    std::vector<Vec> residuals;
    Scheme scheme = Scheme::implicit_euler;
};

// Hadamard products pairing each residual with its adjoint weight; the
// estimate equals the signed grand sum (initial slot negated, matching the
// sign bookkeeping of the fast estimators).
struct DualWeightedResiduals {
    std::vector<Vec> z;  // z_0 .. z_Nt
    Mat matrix_form;     // Ns x (Nt+1), column i = z_i
};

struct ErrorReport {
    double true_error = std::numeric_limits<double>::quiet_NaN();  // set when computed
    double estimated_error = 0.0;
    std::vector<double> per_step_contributions;  // Nt+1 entries summing to the estimate
    int pod_dim = 0;
    int deim_count = 0;  // 0 => plain Galerkin
    double viscosity = 0.0;
    Scheme scheme = Scheme::implicit_euler;
};

// phi_{i+1} = x^_{i+1} - x^_i - h F(x^_i)
ResidualSeries residuals_explicit(const Trajectory& lifted, const DiscreteModel& model,
                                  double h, const Vec& x0_full);
// phi_{i+1} = x^_{i+1} - x^_i - h F(x^_{i+1})
ResidualSeries residuals_implicit(const Trajectory& lifted, const DiscreteModel& model,
                                  double h, const Vec& x0_full);

struct OracleSettings {
    Scheme scheme = Scheme::implicit_euler;
    NewtonSettings newton;
    // Replace the per-index partial-trajectory adjoints with one adjoint
    // along a single high-fidelity run from x_0 (cheaper, first-order close).
    bool single_trajectory_adjoint = false;
};

// Reference estimator: full-model partial trajectories restarted from each
// lifted reduced state, with a dedicated high-fidelity adjoint per start
// index; estimate = -sum_i lambda^_i . dx_i. Also fills true_error.
ErrorReport estimate_error_oracle(const DiscreteModel& model, const ReducedModel& rom,
                                  const QuantityOfInterest& q, const TimeGrid& grid,
                                  const Vec& x0_full, const OracleSettings& settings);

// Fast estimators: one reduced forward + one reduced adjoint + full-space
// residual evaluations; no full forward or adjoint solves.
ErrorReport estimate_error_fast_explicit(const ReducedModel& rom,
                                         const ReducedTrajectory& rtraj,
                                         const QuantityOfInterest& q, const TimeGrid& grid,
                                         const Vec& x0_full);
ErrorReport estimate_error_fast_implicit(const ReducedModel& rom,
                                         const ReducedTrajectory& rtraj,
                                         const QuantityOfInterest& q, const TimeGrid& grid,
                                         const Vec& x0_full);

DualWeightedResiduals dual_weighted_residuals(const ReducedModel& rom,
                                              const ReducedTrajectory& rtraj,
                                              const QuantityOfInterest& q,
                                              const TimeGrid& grid, Scheme scheme,
                                              const Vec& x0_full);

// -sum(z_0 entries) + sum_{i>=1} sum(z_i entries); equals the matching fast
// estimate exactly (same arithmetic, different bookkeeping).
double signed_grand_sum(const DualWeightedResiduals& dwr);

// First `count` left singular vectors of Z with the deterministic sign rule.
Mat dwr_basis(const Mat& Z, int count);

double true_error(const DiscreteModel& model, const ReducedModel& rom,
                  const QuantityOfInterest& q, const TimeGrid& grid, Scheme scheme,
                  const Vec& x0_full, const NewtonSettings& settings = {});

}  // namespace rom

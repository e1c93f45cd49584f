#include "rom/error_estimation.hpp"

#include <cmath>

namespace rom {

namespace {

void check_lifted(const Trajectory& lifted, const DiscreteModel& model, const Vec& x0_full) {
    if (lifted.states.empty())
        throw std::invalid_argument("residuals: empty lifted trajectory");
    if (lifted.states[0].size() != model.dim || x0_full.size() != model.dim)
        throw std::invalid_argument("residuals: dimension mismatch");
}

// QoI over the trajectory suffix starting at `offset`.
QuantityOfInterest shifted_qoi(const QuantityOfInterest& q, int offset) {
    QuantityOfInterest out;
    out.num_steps = q.num_steps - offset;
    out.term = [q, offset](int i, const Vec& x) { return q.term(i + offset, x); };
    out.term_gradient = [q, offset](int i, const Vec& x) {
        return q.term_gradient(i + offset, x);
    };
    return out;
}

}  // namespace

ResidualSeries residuals_explicit(const Trajectory& lifted, const DiscreteModel& model,
                                  double h, const Vec& x0_full) {
    check_lifted(lifted, model, x0_full);
    ResidualSeries series;
    series.scheme = Scheme::explicit_euler;
    series.residuals.reserve(lifted.states.size());
    series.residuals.push_back(x0_full - lifted.states[0]);
    for (std::size_t i = 0; i + 1 < lifted.states.size(); ++i)
        series.residuals.push_back(lifted.states[i + 1] - lifted.states[i] -
                                   h * model.rhs(lifted.states[i]));
    return series;
}

ResidualSeries residuals_implicit(const Trajectory& lifted, const DiscreteModel& model,
                                  double h, const Vec& x0_full) {
    check_lifted(lifted, model, x0_full);
    ResidualSeries series;
    series.scheme = Scheme::implicit_euler;
    series.residuals.reserve(lifted.states.size());
    series.residuals.push_back(x0_full - lifted.states[0]);
    for (std::size_t i = 0; i + 1 < lifted.states.size(); ++i)
        series.residuals.push_back(lifted.states[i + 1] - lifted.states[i] -
                                   h * model.rhs(lifted.states[i + 1]));
    return series;
}

double true_error(const DiscreteModel& model, const ReducedModel& rom,
                  const QuantityOfInterest& q, const TimeGrid& grid, Scheme scheme,
                  const Vec& x0_full, const NewtonSettings& settings) {
    Trajectory full = integrate(model, x0_full, grid, scheme, settings);
    ReducedTrajectory rtraj = integrate_rom(rom, project(rom.basis, x0_full), grid, scheme,
                                            settings);
    Trajectory lifted = lift_trajectory(rom, rtraj);
    return qoi_eval(q, full) - qoi_eval(q, lifted);
}

ErrorReport estimate_error_oracle(const DiscreteModel& model, const ReducedModel& rom,
                                  const QuantityOfInterest& q, const TimeGrid& grid,
                                  const Vec& x0_full, const OracleSettings& settings) {
    const int nt = grid.num_steps;
    const Scheme scheme = settings.scheme;
    auto full_step = [&](const Vec& x) {
        return scheme == Scheme::explicit_euler ? step_explicit(model, x, grid.h)
                                                : step_implicit(model, x, grid.h, settings.newton);
    };
    auto full_adjoint = [&](const Trajectory& traj, const QuantityOfInterest& qq) {
        return scheme == Scheme::explicit_euler ? full_adjoint_explicit(model, traj, qq, grid.h)
                                                : full_adjoint_implicit(model, traj, qq, grid.h);
    };

    ReducedTrajectory rtraj =
        integrate_rom(rom, project(rom.basis, x0_full), grid, scheme, settings.newton);
    Trajectory lifted = lift_trajectory(rom, rtraj);

    // dx_0 is the initial projection error; dx_i restarts the full model for
    // one step from the previous lifted state.
    std::vector<Vec> dx(nt + 1);
    dx[0] = x0_full - lifted.states[0];
    for (int i = 1; i <= nt; ++i) dx[i] = full_step(lifted.states[i - 1]) - lifted.states[i];

    std::vector<Vec> lambda_at(nt + 1);
    if (settings.single_trajectory_adjoint) {
        Trajectory full = integrate(model, x0_full, grid, scheme, settings.newton);
        AdjointTrajectory adj = full_adjoint(full, q);
        lambda_at = adj.multipliers;
    } else {
        for (int i = 0; i < nt; ++i) {
            Trajectory partial;
            partial.grid = TimeGrid(grid.h * (nt - i), nt - i);
            partial.states.reserve(nt - i + 1);
            partial.states.push_back(lifted.states[i]);
            for (int l = i; l < nt; ++l) partial.states.push_back(full_step(partial.states.back()));
            AdjointTrajectory adj = full_adjoint(partial, shifted_qoi(q, i));
            lambda_at[i] = adj.multipliers.front();
        }
        lambda_at[nt] = -q.term_gradient(nt, lifted.states[nt]);
    }

    ErrorReport report;
    report.scheme = scheme;
    report.pod_dim = rom.k;
    report.deim_count = rom.m.value_or(0);
    report.per_step_contributions.resize(nt + 1);
    double estimate = 0.0;
    for (int i = 0; i <= nt; ++i) {
        double c = -lambda_at[i].dot(dx[i]);
        report.per_step_contributions[i] = c;
        estimate += c;
    }
    report.estimated_error = estimate;

    Trajectory full = integrate(model, x0_full, grid, scheme, settings.newton);
    report.true_error = qoi_eval(q, full) - qoi_eval(q, lifted);
    return report;
}

ErrorReport estimate_error_fast_explicit(const ReducedModel& rom,
                                         const ReducedTrajectory& rtraj,
                                         const QuantityOfInterest& q, const TimeGrid& grid,
                                         const Vec& x0_full) {
    const int nt = grid.num_steps;
    const Mat& U = rom.basis.modes;
    AdjointTrajectory adj = reduced_adjoint(rom, rtraj, q, grid.h, Scheme::explicit_euler);
    Trajectory lifted = lift_trajectory(rom, rtraj);
    ResidualSeries phi = residuals_explicit(lifted, rom.full_model, grid.h, x0_full);

    ErrorReport report;
    report.scheme = Scheme::explicit_euler;
    report.pod_dim = rom.k;
    report.deim_count = rom.m.value_or(0);
    report.per_step_contributions.resize(nt + 1);
    report.per_step_contributions[0] =
        -(U * adj.multipliers[0]).dot(phi.residuals[0]);
    for (int i = 1; i <= nt; ++i)
        report.per_step_contributions[i] = (U * adj.multipliers[i]).dot(phi.residuals[i]);
    double estimate = 0.0;
    for (double c : report.per_step_contributions) estimate += c;
    report.estimated_error = estimate;
    return report;
}

ErrorReport estimate_error_fast_implicit(const ReducedModel& rom,
                                         const ReducedTrajectory& rtraj,
                                         const QuantityOfInterest& q, const TimeGrid& grid,
                                         const Vec& x0_full) {
    const int nt = grid.num_steps;
    const Mat& U = rom.basis.modes;
    AdjointTrajectory adj = reduced_adjoint(rom, rtraj, q, grid.h, Scheme::implicit_euler);
    Trajectory lifted = lift_trajectory(rom, rtraj);
    ResidualSeries phi = residuals_implicit(lifted, rom.full_model, grid.h, x0_full);

    ErrorReport report;
    report.scheme = Scheme::implicit_euler;
    report.pod_dim = rom.k;
    report.deim_count = rom.m.value_or(0);
    report.per_step_contributions.resize(nt + 1);
    report.per_step_contributions[0] =
        -(U * adj.multipliers[0]).dot(phi.residuals[0]);
    // Weight on phi_{i+1} pairs the adjoint at index i with the QoI term
    // gradient at i, both on the lifted reduced trajectory.
    for (int i = 0; i < nt; ++i) {
        Vec weight = U * adj.multipliers[i] + q.term_gradient(i, lifted.states[i]);
        report.per_step_contributions[i + 1] = phi.residuals[i + 1].dot(weight);
    }
    double estimate = 0.0;
    for (double c : report.per_step_contributions) estimate += c;
    report.estimated_error = estimate;
    return report;
}

DualWeightedResiduals dual_weighted_residuals(const ReducedModel& rom,
                                              const ReducedTrajectory& rtraj,
                                              const QuantityOfInterest& q,
                                              const TimeGrid& grid, Scheme scheme,
                                              const Vec& x0_full) {
    const int nt = grid.num_steps;
    const Mat& U = rom.basis.modes;
    AdjointTrajectory adj = reduced_adjoint(rom, rtraj, q, grid.h, scheme);
    Trajectory lifted = lift_trajectory(rom, rtraj);
    ResidualSeries phi = scheme == Scheme::explicit_euler
                             ? residuals_explicit(lifted, rom.full_model, grid.h, x0_full)
                             : residuals_implicit(lifted, rom.full_model, grid.h, x0_full);

    DualWeightedResiduals dwr;
    dwr.z.reserve(nt + 1);
    dwr.z.push_back(((U * adj.multipliers[0]).array() * phi.residuals[0].array()).matrix());
    for (int i = 1; i <= nt; ++i) {
        Vec weight;
        if (scheme == Scheme::explicit_euler) {
            weight = U * adj.multipliers[i];
        } else {
            weight = U * adj.multipliers[i - 1] +
                     q.term_gradient(i - 1, lifted.states[i - 1]);
        }
        dwr.z.push_back((phi.residuals[i].array() * weight.array()).matrix());
    }
    dwr.matrix_form.resize(U.rows(), nt + 1);
    for (int i = 0; i <= nt; ++i) dwr.matrix_form.col(i) = dwr.z[i];
    return dwr;
}

double signed_grand_sum(const DualWeightedResiduals& dwr) {
    double total = -dwr.z[0].sum();
    for (std::size_t i = 1; i < dwr.z.size(); ++i) total += dwr.z[i].sum();
    return total;
}

Mat dwr_basis(const Mat& Z, int count) {
    if (count < 1 || count > std::min(Z.rows(), Z.cols()))
        throw std::invalid_argument("dwr_basis: count out of range");
    Eigen::JacobiSVD<Mat> svd(Z, Eigen::ComputeThinU);
    Mat W = svd.matrixU().leftCols(count);
    canonicalize_mode_signs(W);
    return W;
}

}  // namespace rom

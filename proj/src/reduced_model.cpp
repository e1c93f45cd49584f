#include "rom/reduced_model.hpp"

namespace rom {

ReducedModel make_reduced_model(const PodBasis& basis, const DiscreteModel& full_model) {
    ReducedModel rom;
    rom.basis = basis;
    rom.full_model = full_model;
    rom.k = basis.k;
    return rom;
}

ReducedModel make_reduced_model(const PodBasis& basis, const DiscreteModel& full_model,
                                const DeimApproximation& deim) {
    if (deim.projector.rows() != basis.k)
        throw std::invalid_argument("make_reduced_model: projector rows must equal k");
    ReducedModel rom;
    rom.basis = basis;
    rom.deim = deim;
    rom.full_model = full_model;
    rom.k = basis.k;
    rom.m = static_cast<int>(deim.indices.size());
    return rom;
}

Vec reduced_rhs(const ReducedModel& rom, const Vec& xr) {
    if (xr.size() != rom.k) throw std::invalid_argument("reduced_rhs: dimension mismatch");
    Vec f = rom.full_model.rhs(rom.basis.modes * xr);
    if (rom.deim) return rom.deim->projector * rom.deim->sample(f);
    return rom.basis.modes.transpose() * f;
}

Mat reduced_jacobian(const ReducedModel& rom, const Vec& xr) {
    if (xr.size() != rom.k)
        throw std::invalid_argument("reduced_jacobian: dimension mismatch");
    Mat J = rom.full_model.rhs_jacobian(rom.basis.modes * xr);
    if (rom.deim)
        return rom.deim->projector * (rom.deim->sample_rows(J) * rom.basis.modes);
    return rom.basis.modes.transpose() * (J * rom.basis.modes);
}

Vec rom_step_explicit(const ReducedModel& rom, const Vec& xr, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("rom_step_explicit: h must be positive");
    return xr + h * reduced_rhs(rom, xr);
}

Vec rom_step_implicit(const ReducedModel& rom, const Vec& xr, double h,
                      const NewtonSettings& settings) {
    if (!(h > 0.0)) throw std::invalid_argument("rom_step_implicit: h must be positive");
    auto residual = [&](const Vec& y) -> Vec { return y - xr - h * reduced_rhs(rom, y); };
    auto jacobian = [&](const Vec& y) -> Mat {
        Mat J = -h * reduced_jacobian(rom, y);
        J.diagonal().array() += 1.0;
        return J;
    };
    return newton_solve(residual, jacobian, xr, settings);
}

ReducedTrajectory integrate_rom(const ReducedModel& rom, const Vec& xr0, const TimeGrid& grid,
                                Scheme scheme, const NewtonSettings& settings) {
    if (xr0.size() != rom.k)
        throw std::invalid_argument("integrate_rom: initial state dimension mismatch");
    ReducedTrajectory rtraj;
    rtraj.grid = grid;
    rtraj.states.reserve(grid.num_steps + 1);
    rtraj.states.push_back(xr0);
    for (int i = 0; i < grid.num_steps; ++i) {
        try {
            const Vec& xr = rtraj.states.back();
            rtraj.states.push_back(scheme == Scheme::explicit_euler
                                       ? rom_step_explicit(rom, xr, grid.h)
                                       : rom_step_implicit(rom, xr, grid.h, settings));
        } catch (const convergence_error& e) {
            throw convergence_error("integrate_rom: step " + std::to_string(i + 1) +
                                        " failed: " + e.what(),
                                    e.last_residual_norm, e.iterations);
        }
        check_finite(rtraj.states.back(), "integrate_rom: step " + std::to_string(i + 1));
    }
    return rtraj;
}

Trajectory lift_trajectory(const ReducedModel& rom, const ReducedTrajectory& rtraj) {
    Trajectory traj;
    traj.grid = rtraj.grid;
    traj.states.reserve(rtraj.states.size());
    for (const Vec& xr : rtraj.states) traj.states.push_back(rom.basis.modes * xr);
    return traj;
}

}  // namespace rom

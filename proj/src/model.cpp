#include "rom/model.hpp"

namespace rom {

Vec step_explicit(const DiscreteModel& model, const Vec& x, double h) {
    if (x.size() != model.dim)
        throw std::invalid_argument("step_explicit: state dimension mismatch");
    if (!(h > 0.0)) throw std::invalid_argument("step_explicit: h must be positive");
    return x + h * model.rhs(x);
}

Vec newton_solve(const std::function<Vec(const Vec&)>& residual,
                 const std::function<Mat(const Vec&)>& jacobian, const Vec& guess,
                 const NewtonSettings& settings, int* iterations_out) {
    Vec y = guess;
    Vec res = residual(y);
    if (res.size() != y.size())
        throw std::invalid_argument("newton_solve: residual dimension mismatch");
    double res_norm = res.norm();
    int iter = 0;
    while (res_norm > settings.tol) {
        if (iter >= settings.max_iter)
            throw convergence_error("newton_solve: no convergence after " +
                                        std::to_string(settings.max_iter) +
                                        " iterations (residual " + std::to_string(res_norm) + ")",
                                    res_norm, iter);
        Mat J = jacobian(y);
        Eigen::PartialPivLU<Mat> lu(J);
        // PartialPivLU has no rank query; detect breakdown through the solution.
        Vec dy = lu.solve(res);
        if (!dy.allFinite())
            throw linear_solve_error("newton_solve: singular Newton matrix at iteration " +
                                     std::to_string(iter));
        y -= dy;
        res = residual(y);
        res_norm = res.norm();
        ++iter;
    }
    if (iterations_out) *iterations_out = iter;
    return y;
}

Vec step_implicit(const DiscreteModel& model, const Vec& x, double h,
                  const NewtonSettings& settings) {
    if (x.size() != model.dim)
        throw std::invalid_argument("step_implicit: state dimension mismatch");
    if (!(h > 0.0)) throw std::invalid_argument("step_implicit: h must be positive");
    check_finite(x, "step_implicit");
    auto residual = [&](const Vec& y) -> Vec { return y - x - h * model.rhs(y); };
    auto jacobian = [&](const Vec& y) -> Mat {
        Mat J = -h * model.rhs_jacobian(y);
        J.diagonal().array() += 1.0;
        return J;
    };
    return newton_solve(residual, jacobian, x, settings);
}

Trajectory integrate(const DiscreteModel& model, const Vec& x0, const TimeGrid& grid,
                     Scheme scheme, const NewtonSettings& settings) {
    if (x0.size() != model.dim)
        throw std::invalid_argument("integrate: initial state dimension mismatch");
    Trajectory traj;
    traj.grid = grid;
    traj.states.reserve(grid.num_steps + 1);
    traj.states.push_back(x0);
    for (int i = 0; i < grid.num_steps; ++i) {
        try {
            const Vec& x = traj.states.back();
            traj.states.push_back(scheme == Scheme::explicit_euler
                                      ? step_explicit(model, x, grid.h)
                                      : step_implicit(model, x, grid.h, settings));
        } catch (const convergence_error& e) {
            throw convergence_error("integrate: step " + std::to_string(i + 1) + " failed: " +
                                        e.what(),
                                    e.last_residual_norm, e.iterations);
        }
        check_finite(traj.states.back(), "integrate: step " + std::to_string(i + 1));
    }
    return traj;
}

}  // namespace rom

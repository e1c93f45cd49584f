#include "rom/adjoint.hpp"

namespace rom {

std::vector<int> sensor_index_set(const BurgersModel& model, double lo, double hi) {
    const Vec x = interior_coordinates(model);
    std::vector<int> set;
    const double eps = 1e-12;  // inclusive endpoints, robust to coordinate roundoff
    for (int i = 0; i < model.dim; ++i)
        if (x(i) >= lo - eps && x(i) <= hi + eps) set.push_back(i);
    return set;
}

QuantityOfInterest make_burgers_qoi(const BurgersModel& model, int num_steps, double lo,
                                    double hi) {
    QuantityOfInterest q;
    q.num_steps = num_steps;
    auto set = sensor_index_set(model, lo, hi);
    const int dim = model.dim;
    q.term = [set, num_steps](int i, const Vec& u) -> double {
        if (i != num_steps) return 0.0;
        double sum = 0.0;
        for (int j : set) sum += u(j) * u(j);
        return sum;
    };
    q.term_gradient = [set, num_steps, dim](int i, const Vec& u) -> Vec {
        Vec g = Vec::Zero(dim);
        if (i == num_steps)
            for (int j : set) g(j) = 2.0 * u(j);
        return g;
    };
    return q;
}

double qoi_eval(const QuantityOfInterest& q, const Trajectory& traj) {
    if (static_cast<int>(traj.states.size()) != q.num_steps + 1)
        throw std::invalid_argument("qoi_eval: trajectory length mismatch");
    double sum = 0.0;
    for (int i = 0; i <= q.num_steps; ++i) sum += q.term(i, traj.states[i]);
    return sum;
}

AdjointTrajectory full_adjoint_explicit(const DiscreteModel& model, const Trajectory& traj,
                                        const QuantityOfInterest& q, double h) {
    const int nt = q.num_steps;
    if (static_cast<int>(traj.states.size()) != nt + 1)
        throw std::invalid_argument("full_adjoint_explicit: trajectory length mismatch");
    AdjointTrajectory adj;
    adj.scheme = Scheme::explicit_euler;
    adj.multipliers.assign(nt + 1, Vec());
    adj.multipliers[nt] = -q.term_gradient(nt, traj.states[nt]);
    for (int i = nt - 1; i >= 0; --i) {
        Mat J = model.rhs_jacobian(traj.states[i]);
        adj.multipliers[i] = adj.multipliers[i + 1] + h * (J.transpose() * adj.multipliers[i + 1]) -
                             q.term_gradient(i, traj.states[i]);
    }
    return adj;
}

AdjointTrajectory full_adjoint_implicit(const DiscreteModel& model, const Trajectory& traj,
                                        const QuantityOfInterest& q, double h) {
    const int nt = q.num_steps;
    if (static_cast<int>(traj.states.size()) != nt + 1)
        throw std::invalid_argument("full_adjoint_implicit: trajectory length mismatch");
    AdjointTrajectory adj;
    adj.scheme = Scheme::implicit_euler;
    adj.multipliers.assign(nt + 1, Vec());
    adj.multipliers[nt] = -q.term_gradient(nt, traj.states[nt]);
    for (int i = nt - 1; i >= 0; --i) {
        Mat A = -h * model.rhs_jacobian(traj.states[i + 1]);
        A.diagonal().array() += 1.0;  // I - h J(x_{i+1})
        Eigen::PartialPivLU<Mat> lu(A.transpose());
        Vec propagated = lu.solve(adj.multipliers[i + 1]);
        if (!propagated.allFinite())
            throw linear_solve_error("full_adjoint_implicit: singular step matrix at index " +
                                     std::to_string(i));
        adj.multipliers[i] = propagated - q.term_gradient(i, traj.states[i]);
    }
    return adj;
}

AdjointTrajectory reduced_adjoint(const ReducedModel& rom, const ReducedTrajectory& rtraj,
                                  const QuantityOfInterest& q, double h, Scheme scheme) {
    const int nt = q.num_steps;
    if (static_cast<int>(rtraj.states.size()) != nt + 1)
        throw std::invalid_argument("reduced_adjoint: trajectory length mismatch");
    const Mat& U = rom.basis.modes;
    AdjointTrajectory adj;
    adj.scheme = scheme;
    adj.multipliers.assign(nt + 1, Vec());
    adj.multipliers[nt] =
        -(U.transpose() * q.term_gradient(nt, U * rtraj.states[nt]));
    for (int i = nt - 1; i >= 0; --i) {
        Vec reduced_grad = U.transpose() * q.term_gradient(i, U * rtraj.states[i]);
        if (scheme == Scheme::explicit_euler) {
            // U^T [I + h Pi J(U x~_i)]^T U lambda~_{i+1}, Pi = V (P^T V)^{-1} P^T,
            // evaluated right-to-left without forming the Ns x Ns bracket.
            Vec lifted_next = U * adj.multipliers[i + 1];
            Mat J = rom.full_model.rhs_jacobian(U * rtraj.states[i]);
            Vec inner = lifted_next;
            if (rom.deim) {
                // Pi^T U lambda~ = P (P^T V)^-T V^T U lambda~
                Mat PtV = rom.deim->sample_rows(rom.deim->nonlinear_modes);
                Vec coeff = PtV.transpose().partialPivLu().solve(
                    rom.deim->nonlinear_modes.transpose() * lifted_next);
                Vec scattered = Vec::Zero(U.rows());
                for (std::size_t r = 0; r < rom.deim->indices.size(); ++r)
                    scattered(rom.deim->indices[r] - 1) = coeff(static_cast<Eigen::Index>(r));
                inner = scattered;
            }
            adj.multipliers[i] =
                adj.multipliers[i + 1] + h * (U.transpose() * (J.transpose() * inner)) -
                reduced_grad;
        } else {
            Mat A = -h * reduced_jacobian(rom, rtraj.states[i + 1]);
            A.diagonal().array() += 1.0;  // I_k - h J~(x~_{i+1})
            Eigen::PartialPivLU<Mat> lu(A.transpose());
            Vec propagated = lu.solve(adj.multipliers[i + 1]);
            if (!propagated.allFinite())
                throw linear_solve_error("reduced_adjoint: singular step matrix at index " +
                                         std::to_string(i));
            adj.multipliers[i] = propagated - reduced_grad;
        }
    }
    return adj;
}

Vec qoi_gradient(const AdjointTrajectory& adj) {
    if (adj.multipliers.empty())
        throw std::invalid_argument("qoi_gradient: empty adjoint trajectory");
    return -adj.multipliers.front();
}

}  // namespace rom

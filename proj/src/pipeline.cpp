#include "rom/pipeline.hpp"

#include <chrono>

namespace rom {

const std::vector<std::string> kEstimateCsvHeader = {
    "k",          "m",     "alpha",           "mu",    "scheme",    "true_error",
    "estimated_error", "ratio", "cond_PtV", "qoi_value", "wall_ms"};

BurgersModel model_from_config(const ExperimentConfig& cfg) {
    return build_burgers(cfg.n_grid, cfg.length, cfg.viscosity);
}

Vec ic_from_config(const ExperimentConfig& cfg, const BurgersModel& model) {
    double a = normalized_ic_amplitude(model, cfg.ic_root1, cfg.ic_root2, cfg.ic_root3,
                                       cfg.ic_peak, cfg.ic_sign);
    return initial_condition(model, a, cfg.ic_root1, cfg.ic_root2, cfg.ic_root3);
}

FomResult run_fom(const ExperimentConfig& cfg) {
    FomResult fom;
    fom.burgers = model_from_config(cfg);
    fom.grid = TimeGrid(cfg.t_final, cfg.num_steps);
    fom.x0 = ic_from_config(cfg, fom.burgers);
    DiscreteModel dm = as_discrete_model(fom.burgers);
    fom.traj = integrate(dm, fom.x0, fom.grid, cfg.scheme);
    QuantityOfInterest q = make_burgers_qoi(fom.burgers, cfg.num_steps, cfg.qoi_lo, cfg.qoi_hi);
    fom.adj = cfg.scheme == Scheme::explicit_euler
                  ? full_adjoint_explicit(dm, fom.traj, q, fom.grid.h)
                  : full_adjoint_implicit(dm, fom.traj, q, fom.grid.h);
    fom.qoi_value = qoi_eval(q, fom.traj);
    return fom;
}

BasisSet build_bases(const ExperimentConfig& cfg, const FomResult& fom) {
    std::vector<Vec> adjoint_states(fom.adj.multipliers.begin(),
                                    fom.adj.multipliers.end() - 1);
    return build_bases(cfg, fom.traj.states, adjoint_states);
}

BasisSet build_bases(const ExperimentConfig& cfg, const std::vector<Vec>& forward_states,
                     const std::vector<Vec>& adjoint_states) {
    // Forward states plus adjoint states lambda_0..lambda_{Nt-1} enrich the
    // state basis so the reduced adjoint is accurate; the nonlinear-term
    // basis collects one rhs snapshot per time step.
    SnapshotMatrix state_snaps = collect_snapshots({
        {forward_states, SnapshotTag::forward_state},
        {adjoint_states, SnapshotTag::adjoint_state},
    });

    BurgersModel burgers = model_from_config(cfg);
    DiscreteModel dm = as_discrete_model(burgers);
    std::vector<Vec> nl;
    nl.reserve(forward_states.size() - 1);
    for (std::size_t i = 1; i < forward_states.size(); ++i)
        nl.push_back(dm.rhs(forward_states[i]));
    SnapshotMatrix nl_snaps = collect_snapshots({{nl, SnapshotTag::nonlinear_term}});

    BasisSet bases;
    int full_state = static_cast<int>(std::min(state_snaps.data.rows(), state_snaps.data.cols()));
    int full_nl = static_cast<int>(std::min(nl_snaps.data.rows(), nl_snaps.data.cols()));
    bases.state = pod_basis(state_snaps, PodTruncation::fixed(full_state));
    PodBasis nl_basis = pod_basis(nl_snaps, PodTruncation::fixed(full_nl));
    bases.nl_modes = nl_basis.modes;

    if (cfg.deim_points > bases.nl_modes.cols())
        throw config_error("rom.deim_points exceeds available nonlinear-term modes (" +
                           std::to_string(bases.nl_modes.cols()) + ")");
    Mat V = bases.nl_modes.leftCols(cfg.deim_points);
    bases.deim_idx = deim_indices(V);
    bases.deim_condition = selection_condition_number(V, bases.deim_idx);
    return bases;
}

PodBasis truncate_basis(const PodBasis& basis, int k) {
    if (k < 1 || k > basis.modes.cols())
        throw config_error("pod_dim " + std::to_string(k) + " out of range [1, " +
                           std::to_string(basis.modes.cols()) + "]");
    PodBasis out;
    out.modes = basis.modes.leftCols(k);
    out.singular_values = basis.singular_values;
    out.k = k;
    out.gamma = basis.gamma;
    return out;
}

namespace {

ExperimentConfig with_viscosity(const ExperimentConfig& cfg, double mu) {
    ExperimentConfig out = cfg;
    out.viscosity = mu;
    return out;
}

}  // namespace

EstimateRow evaluate_point(const ExperimentConfig& cfg, const BasisSet& bases, int k, int m,
                           double alpha, double mu, bool adaptive,
                           const std::optional<Mat>& dwr_modes_W,
                           const Trajectory* cached_fom) {
    EstimateRow row;
    row.k = k;
    row.m = m;
    row.alpha = alpha;
    row.mu = mu;
    row.scheme = cfg.scheme;

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (m > bases.nl_modes.cols())
            throw config_error("deim_points " + std::to_string(m) +
                               " exceeds available nonlinear-term modes");
        Mat V = bases.nl_modes.leftCols(m);
        std::vector<int> indices;
        if (adaptive) {
            if (!dwr_modes_W)
                throw missing_artifact_error(
                    "adaptive selection requires dual-weighted-residual modes from a prior "
                    "estimate run");
            Mat W = dwr_modes_W->leftCols(std::min<Eigen::Index>(
                std::min<Eigen::Index>(m, cfg.dwr_modes), dwr_modes_W->cols()));
            indices = adaptive_deim_indices(V, W, alpha);
        } else {
            indices = deim_indices(V);
        }
        row.cond_PtV = selection_condition_number(V, indices);

        ExperimentConfig eval_cfg = with_viscosity(cfg, mu);
        BurgersModel burgers = model_from_config(eval_cfg);
        DiscreteModel dm = as_discrete_model(burgers);
        Vec x0 = ic_from_config(eval_cfg, burgers);
        TimeGrid grid(cfg.t_final, cfg.num_steps);
        QuantityOfInterest q =
            make_burgers_qoi(burgers, cfg.num_steps, cfg.qoi_lo, cfg.qoi_hi);

        PodBasis Uk = truncate_basis(bases.state, k);
        DeimApproximation deim = build_deim_operator(Uk, V, indices);
        ReducedModel reduced = make_reduced_model(Uk, dm, deim);

        ReducedTrajectory rtraj =
            integrate_rom(reduced, project(Uk, x0), grid, cfg.scheme);
        ErrorReport report = cfg.scheme == Scheme::explicit_euler
                                 ? estimate_error_fast_explicit(reduced, rtraj, q, grid, x0)
                                 : estimate_error_fast_implicit(reduced, rtraj, q, grid, x0);
        row.estimated_error = report.estimated_error;
        row.qoi_value = qoi_eval(q, lift_trajectory(reduced, rtraj));

        Trajectory full = cached_fom ? *cached_fom : integrate(dm, x0, grid, cfg.scheme);
        row.true_error = qoi_eval(q, full) - row.qoi_value;
        row.ratio = row.estimated_error / row.true_error;
    } catch (const config_error& e) {
        row.failure = e.what();
        row.failure_code = 2;
    } catch (const missing_artifact_error& e) {
        row.failure = e.what();
        row.failure_code = 4;
    } catch (const std::exception& e) {
        row.failure = e.what();
        row.failure_code = 3;
    }
    row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return row;
}

Mat dwr_matrix_for_point(const ExperimentConfig& cfg, const BasisSet& bases, int k, int m,
                         double mu) {
    if (m > bases.nl_modes.cols())
        throw config_error("deim_points exceeds available nonlinear-term modes");
    Mat V = bases.nl_modes.leftCols(m);
    std::vector<int> indices = deim_indices(V);

    ExperimentConfig eval_cfg = with_viscosity(cfg, mu);
    BurgersModel burgers = model_from_config(eval_cfg);
    DiscreteModel dm = as_discrete_model(burgers);
    Vec x0 = ic_from_config(eval_cfg, burgers);
    TimeGrid grid(cfg.t_final, cfg.num_steps);
    QuantityOfInterest q = make_burgers_qoi(burgers, cfg.num_steps, cfg.qoi_lo, cfg.qoi_hi);

    PodBasis Uk = truncate_basis(bases.state, k);
    DeimApproximation deim = build_deim_operator(Uk, V, indices);
    ReducedModel reduced = make_reduced_model(Uk, dm, deim);
    ReducedTrajectory rtraj = integrate_rom(reduced, project(Uk, x0), grid, cfg.scheme);
    DualWeightedResiduals dwr =
        dual_weighted_residuals(reduced, rtraj, q, grid, cfg.scheme, x0);
    return dwr.matrix_form;
}

std::vector<std::string> estimate_row_to_csv(const EstimateRow& row) {
    return {std::to_string(row.k),
            std::to_string(row.m),
            format_double(row.alpha),
            format_double(row.mu),
            scheme_name(row.scheme),
            format_double(row.true_error),
            format_double(row.estimated_error),
            format_double(row.ratio),
            format_double(row.cond_PtV),
            format_double(row.qoi_value),
            "0"};  // wall time varies run to run; kept out of idempotent artifacts
}

EstimateRow estimate_row_from_csv(const std::vector<std::string>& fields) {
    if (fields.size() != kEstimateCsvHeader.size())
        throw std::runtime_error("estimate row: wrong field count");
    EstimateRow row;
    row.k = std::stoi(fields[0]);
    row.m = std::stoi(fields[1]);
    row.alpha = std::stod(fields[2]);
    row.mu = std::stod(fields[3]);
    row.scheme = fields[4] == "explicit" ? Scheme::explicit_euler : Scheme::implicit_euler;
    row.true_error = std::stod(fields[5]);
    row.estimated_error = std::stod(fields[6]);
    row.ratio = std::stod(fields[7]);
    row.cond_PtV = std::stod(fields[8]);
    row.qoi_value = std::stod(fields[9]);
    row.wall_ms = std::stol(fields[10]);
    return row;
}

}  // namespace rom

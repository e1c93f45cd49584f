#include "rom/commands.hpp"

#include <cmath>
#include <iostream>
#include <map>

#include "rom/io.hpp"

namespace rom {

namespace {

Mat states_to_matrix(const std::vector<Vec>& states) {
    Mat m(states.front().size(), static_cast<Eigen::Index>(states.size()));
    for (std::size_t i = 0; i < states.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = states[i];
    return m;
}

std::vector<Vec> matrix_to_states(const Mat& m) {
    std::vector<Vec> states(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) states[static_cast<std::size_t>(j)] = m.col(j);
    return states;
}

void print_row(const EstimateRow& row) {
    if (!row.failure.empty()) {
        std::cout << "point k=" << row.k << " m=" << row.m << " alpha=" << format_double(row.alpha)
                  << " mu=" << format_double(row.mu) << " failed: " << row.failure << "\n";
        return;
    }
    std::cout << "k=" << row.k << " m=" << row.m << " alpha=" << format_double(row.alpha)
              << " mu=" << format_double(row.mu) << " scheme=" << scheme_name(row.scheme)
              << " true_error=" << format_double(row.true_error)
              << " estimated_error=" << format_double(row.estimated_error)
              << " ratio=" << format_double(row.ratio)
              << " cond_PtV=" << format_double(row.cond_PtV)
              << " qoi=" << format_double(row.qoi_value) << " wall_ms=" << row.wall_ms << "\n";
}

// Columns of the dual-weighted-residual modes available for adaptive
// selection: capped by the stored matrix and the configured mode count.
Mat load_dwr_modes(const ExperimentConfig& cfg, const ArtifactPaths& paths) {
    Mat Z = read_matrix(paths.dwr_z());
    int count = static_cast<int>(std::min<Eigen::Index>(
        {static_cast<Eigen::Index>(cfg.dwr_modes), Z.rows(), Z.cols()}));
    return dwr_basis(Z, count);
}

}  // namespace

int resolve_pod_dim(const ExperimentConfig& cfg, const PodBasis& full_basis) {
    if (cfg.pod_dim) return *cfg.pod_dim;
    if (cfg.pod_energy) return energy_rank(full_basis.singular_values, *cfg.pod_energy);
    return cfg.pod_dim_or_default();
}

BasisSet load_bases(const ExperimentConfig& cfg) {
    ArtifactPaths paths{cfg.output_dir};
    BasisSet bases;
    bases.state.modes = read_matrix(paths.state_basis());
    bases.state.singular_values = read_vector(paths.state_singular_values());
    bases.state.k = static_cast<int>(bases.state.modes.cols());
    bases.nl_modes = read_matrix(paths.nl_basis());
    bases.deim_idx = read_indices(paths.deim_indices_file());
    Mat cond = read_matrix(paths.deim_condition());
    bases.deim_condition = cond(0, 0);
    return bases;
}

int cmd_run_fom(const ExperimentConfig& cfg) {
    FomResult fom = run_fom(cfg);
    ArtifactPaths paths{cfg.output_dir};
    write_matrix(paths.trajectory(), states_to_matrix(fom.traj.states));
    write_matrix(paths.adjoint(), states_to_matrix(fom.adj.multipliers));
    write_vector(paths.initial_state(), fom.x0);
    Mat q(1, 1);
    q(0, 0) = fom.qoi_value;
    write_matrix(paths.qoi_value(), q);
    std::cout << "full model: n_grid=" << cfg.n_grid << " dim=" << fom.burgers.dim
              << " steps=" << cfg.num_steps << " scheme=" << scheme_name(cfg.scheme) << "\n"
              << "qoi_value=" << format_double(fom.qoi_value) << "\n"
              << "wrote " << paths.trajectory().string() << ", " << paths.adjoint().string()
              << ", " << paths.initial_state().string() << ", " << paths.qoi_value().string()
              << "\n";
    return 0;
}

int cmd_build_rom(const ExperimentConfig& cfg) {
    ArtifactPaths paths{cfg.output_dir};
    std::vector<Vec> forward = matrix_to_states(read_matrix(paths.trajectory()));
    std::vector<Vec> adjoint_all = matrix_to_states(read_matrix(paths.adjoint()));
    // The terminal multiplier is the gradient seed, not a usable snapshot of
    // adjoint dynamics; keep lambda_0 .. lambda_{Nt-1}.
    std::vector<Vec> adjoint(adjoint_all.begin(), adjoint_all.end() - 1);
    BasisSet bases = build_bases(cfg, forward, adjoint);

    write_matrix(paths.state_basis(), bases.state.modes);
    write_vector(paths.state_singular_values(), bases.state.singular_values);
    write_matrix(paths.nl_basis(), bases.nl_modes);
    write_indices(paths.deim_indices_file(), bases.deim_idx);
    Mat cond(1, 1);
    cond(0, 0) = bases.deim_condition;
    write_matrix(paths.deim_condition(), cond);

    std::cout << "state basis: " << bases.state.modes.rows() << " x " << bases.state.modes.cols()
              << " (from " << forward.size() << " forward + " << adjoint.size()
              << " adjoint snapshots)\n"
              << "nonlinear-term basis: " << bases.nl_modes.rows() << " x "
              << bases.nl_modes.cols() << "\n"
              << "interpolation indices (m=" << cfg.deim_points
              << "): cond_PtV=" << format_double(bases.deim_condition) << "\n";
    return 0;
}

int cmd_estimate(const ExperimentConfig& cfg) {
    ArtifactPaths paths{cfg.output_dir};
    BasisSet bases = load_bases(cfg);
    int k = resolve_pod_dim(cfg, bases.state);
    int m = cfg.deim_points;

    std::optional<Mat> W;
    if (cfg.adaptive) W = load_dwr_modes(cfg, paths);

    EstimateRow row =
        evaluate_point(cfg, bases, k, m, cfg.alpha, cfg.viscosity, cfg.adaptive, W);
    print_row(row);
    if (!row.failure.empty()) {
        std::cerr << "estimate failed: " << row.failure << "\n";
        return row.failure_code == 0 ? 3 : row.failure_code;
    }

    CsvTable table;
    table.header = kEstimateCsvHeader;
    table.rows.push_back(estimate_row_to_csv(row));
    write_csv(paths.estimate_csv(), table);

    // Persist the dual-weighted residuals of the standard-selection reduced
    // model at this point; adapt-deim seeds its mode directions from them.
    Mat Z = dwr_matrix_for_point(cfg, bases, k, m, cfg.viscosity);
    write_matrix(paths.dwr_z(), Z);
    std::cout << "wrote " << paths.estimate_csv().string() << ", " << paths.dwr_z().string()
              << "\n";
    return 0;
}

int cmd_adapt_deim(const ExperimentConfig& cfg) {
    ArtifactPaths paths{cfg.output_dir};
    BasisSet bases = load_bases(cfg);
    int k = resolve_pod_dim(cfg, bases.state);
    int m = cfg.deim_points;
    if (m > bases.nl_modes.cols())
        throw config_error("rom.deim_points exceeds available nonlinear-term modes");
    Mat V = bases.nl_modes.leftCols(m);
    Mat W = load_dwr_modes(cfg, paths);
    Mat W_used = W.leftCols(std::min<Eigen::Index>(m, W.cols()));

    std::vector<int> standard_idx = deim_indices(V);
    double cond_standard = selection_condition_number(V, standard_idx);
    std::vector<int> adaptive_idx = adaptive_deim_indices(V, W_used, cfg.alpha);
    double cond_adaptive = selection_condition_number(V, adaptive_idx);
    write_indices(paths.adapt_indices(), adaptive_idx);

    // Shared full-model reference so every row compares against one
    // trajectory at this viscosity.
    FomResult fom = run_fom(cfg);

    std::vector<double> alphas =
        cfg.sweep_alpha.empty() ? std::vector<double>{cfg.alpha} : cfg.sweep_alpha;

    CsvTable table;
    table.header = {"alpha", "true_error_standard", "true_error_adaptive", "cond_standard",
                    "cond_adaptive"};
    EstimateRow std_row =
        evaluate_point(cfg, bases, k, m, cfg.alpha, cfg.viscosity, false, {}, &fom.traj);
    if (!std_row.failure.empty())
        std::cout << "standard selection failed: " << std_row.failure << "\n";
    for (double alpha : alphas) {
        EstimateRow ad_row =
            evaluate_point(cfg, bases, k, m, alpha, cfg.viscosity, true, W, &fom.traj);
        std::vector<int> idx_a = adaptive_deim_indices(
            V, W.leftCols(std::min<Eigen::Index>(m, W.cols())), alpha);
        double cond_a = selection_condition_number(V, idx_a);
        if (!ad_row.failure.empty())
            std::cout << "alpha=" << format_double(alpha) << " failed: " << ad_row.failure
                      << "\n";
        else
            std::cout << "alpha=" << format_double(alpha)
                      << " |true_error| standard=" << format_double(std::abs(std_row.true_error))
                      << " adaptive=" << format_double(std::abs(ad_row.true_error))
                      << " cond_PtV standard=" << format_double(cond_standard)
                      << " adaptive=" << format_double(cond_a) << "\n";
        table.rows.push_back({format_double(alpha), format_double(std_row.true_error),
                              format_double(ad_row.true_error), format_double(cond_standard),
                              format_double(cond_a)});
    }
    write_csv(paths.adapt_table(), table);
    std::cout << "adaptive indices (alpha=" << format_double(cfg.alpha)
              << "): cond_PtV=" << format_double(cond_adaptive) << " vs standard "
              << format_double(cond_standard) << "\n"
              << "wrote " << paths.adapt_indices().string() << ", "
              << paths.adapt_table().string() << "\n";
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    if (cfg.sweep_k.empty() && cfg.sweep_m.empty() && cfg.sweep_alpha.empty() &&
        cfg.sweep_mu.empty())
        throw config_error("sweep requires at least one sweep.*_values list");

    ArtifactPaths paths{cfg.output_dir};
    BasisSet bases = load_bases(cfg);

    std::vector<int> ks = cfg.sweep_k.empty()
                              ? std::vector<int>{resolve_pod_dim(cfg, bases.state)}
                              : cfg.sweep_k;
    std::vector<int> ms = cfg.sweep_m.empty() ? std::vector<int>{cfg.deim_points} : cfg.sweep_m;
    std::vector<double> alphas =
        cfg.sweep_alpha.empty() ? std::vector<double>{cfg.alpha} : cfg.sweep_alpha;
    std::vector<double> mus =
        cfg.sweep_mu.empty() ? std::vector<double>{cfg.viscosity} : cfg.sweep_mu;

    std::optional<Mat> W;
    if (cfg.adaptive) W = load_dwr_modes(cfg, paths);

    // One full-model trajectory per viscosity, shared across the grid.
    std::map<double, Trajectory> fom_cache;
    std::map<double, std::string> fom_failure;
    auto full_trajectory = [&](double mu) -> const Trajectory* {
        if (fom_failure.count(mu)) return nullptr;
        auto it = fom_cache.find(mu);
        if (it != fom_cache.end()) return &it->second;
        try {
            ExperimentConfig eval_cfg = cfg;
            eval_cfg.viscosity = mu;
            BurgersModel burgers = model_from_config(eval_cfg);
            DiscreteModel dm = as_discrete_model(burgers);
            Vec x0 = ic_from_config(eval_cfg, burgers);
            TimeGrid grid(cfg.t_final, cfg.num_steps);
            auto [pos, ok] = fom_cache.emplace(mu, integrate(dm, x0, grid, cfg.scheme));
            return &pos->second;
        } catch (const std::exception& e) {
            fom_failure[mu] = e.what();
            return nullptr;
        }
    };

    CsvTable table;
    table.header = kEstimateCsvHeader;
    int failures = 0;
    for (int k : ks)
        for (int m : ms)
            for (double alpha : alphas)
                for (double mu : mus) {
                    const Trajectory* full = full_trajectory(mu);
                    EstimateRow row;
                    if (!full) {
                        row.k = k;
                        row.m = m;
                        row.alpha = alpha;
                        row.mu = mu;
                        row.scheme = cfg.scheme;
                        row.failure = "full model integration failed: " + fom_failure[mu];
                        row.failure_code = 3;
                    } else {
                        row = evaluate_point(cfg, bases, k, m, alpha, mu, cfg.adaptive, W, full);
                    }
                    print_row(row);
                    if (!row.failure.empty()) ++failures;
                    table.rows.push_back(estimate_row_to_csv(row));
                }
    write_csv(paths.sweep_csv(), table);
    std::cout << "wrote " << paths.sweep_csv().string() << " (" << table.rows.size()
              << " rows, " << failures << " failed)\n";
    return 0;
}

}  // namespace rom

#pragma once

#include <filesystem>
#include <optional>

#include "rom/adjoint.hpp"
#include "rom/burgers.hpp"
#include "rom/config.hpp"
#include "rom/error_estimation.hpp"
#include "rom/io.hpp"
#include "rom/pod.hpp"
#include "rom/reduced_model.hpp"

namespace rom {

// Orchestration shared by the CLI commands and the acceptance experiments:
// forward run -> snapshot bases -> reduced model -> estimate rows.

struct FomResult {
    BurgersModel burgers;
    TimeGrid grid;
    Vec x0;
    Trajectory traj;
    AdjointTrajectory adj;  // full adjoint matching the configured scheme
    double qoi_value = 0.0;
};

struct BasisSet {
    PodBasis state;            // full-width state basis (forward + adjoint snapshots)
    Mat nl_modes;              // full-width nonlinear-term basis
    std::vector<int> deim_idx; // standard selection over the first deim_points columns
    double deim_condition = 0.0;
};

// One row of the experiment CSV (schema pinned in the output format docs).
struct EstimateRow {
    int k = 0;
    int m = 0;
    double alpha = 0.0;
    double mu = 0.0;
    Scheme scheme = Scheme::implicit_euler;
    double true_error = std::numeric_limits<double>::quiet_NaN();
    double estimated_error = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double cond_PtV = std::numeric_limits<double>::quiet_NaN();
    double qoi_value = std::numeric_limits<double>::quiet_NaN();
    long wall_ms = 0;  // measured, but written as 0 in artifacts (see README)
    std::string failure;   // non-empty when this point failed
    int failure_code = 0;  // matching CLI exit code class (2/3/4) when failed
};

BurgersModel model_from_config(const ExperimentConfig& cfg);
Vec ic_from_config(const ExperimentConfig& cfg, const BurgersModel& model);

FomResult run_fom(const ExperimentConfig& cfg);

// State basis from forward states x_0..x_Nt plus adjoint states
// lambda_0..lambda_{Nt-1}; nonlinear-term basis from F(x_1)..F(x_Nt).
// Both kept at full width; consumers truncate to k and m.
BasisSet build_bases(const ExperimentConfig& cfg, const FomResult& fom);
BasisSet build_bases(const ExperimentConfig& cfg, const std::vector<Vec>& forward_states,
                     const std::vector<Vec>& adjoint_states);

PodBasis truncate_basis(const PodBasis& basis, int k);

// Assemble and evaluate one (k, m, alpha, mu) point: integrate the reduced
// model, run the fast estimator for the configured scheme, and compare with
// the true error at evaluation viscosity mu (bases stay as built).
// `dwr_modes_W` enables adaptive index selection with blend alpha.
EstimateRow evaluate_point(const ExperimentConfig& cfg, const BasisSet& bases, int k, int m,
                           double alpha, double mu, bool adaptive,
                           const std::optional<Mat>& dwr_modes_W,
                           const Trajectory* cached_fom = nullptr);

// Dual-weighted residual matrix Z of the given point (needed for adaptive
// selection); runs the reduced model once.
Mat dwr_matrix_for_point(const ExperimentConfig& cfg, const BasisSet& bases, int k, int m,
                         double mu);

// Artifact file names inside an output directory.
struct ArtifactPaths {
    std::filesystem::path dir;
    std::filesystem::path trajectory() const { return dir / "trajectory.txt"; }
    std::filesystem::path adjoint() const { return dir / "adjoint.txt"; }
    std::filesystem::path initial_state() const { return dir / "x0.txt"; }
    std::filesystem::path qoi_value() const { return dir / "qoi_value.txt"; }
    std::filesystem::path state_basis() const { return dir / "state_basis.txt"; }
    std::filesystem::path state_singular_values() const {
        return dir / "state_singular_values.txt";
    }
    std::filesystem::path nl_basis() const { return dir / "nl_basis.txt"; }
    std::filesystem::path deim_indices_file() const { return dir / "deim_indices.txt"; }
    std::filesystem::path deim_condition() const { return dir / "deim_condition.txt"; }
    std::filesystem::path estimate_csv() const { return dir / "estimate.csv"; }
    std::filesystem::path dwr_z() const { return dir / "dwr_z.txt"; }
    std::filesystem::path adapt_indices() const { return dir / "adaptive_indices.txt"; }
    std::filesystem::path adapt_table() const { return dir / "adapt_table.csv"; }
    std::filesystem::path sweep_csv() const { return dir / "sweep.csv"; }
};

extern const std::vector<std::string> kEstimateCsvHeader;
std::vector<std::string> estimate_row_to_csv(const EstimateRow& row);
EstimateRow estimate_row_from_csv(const std::vector<std::string>& fields);

}  // namespace rom

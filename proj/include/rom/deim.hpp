#pragma once

#include "rom/pod.hpp"
#include "rom/types.hpp"

namespace rom {

// Discrete empirical interpolation of a nonlinear term:
//   F(x) ~ V (P^T V)^{-1} P^T F(x),
// with P selecting `indices` (1-based rows, matching the serialized form).
struct DeimApproximation {
    Mat nonlinear_modes;       // V, Ns x m
    std::vector<int> indices;  // rho, 1-based into 1..Ns, pairwise distinct
    Mat projector;             // precomputed U^T V (P^T V)^{-1}, k x m

    // Realizes P^T: gathers the selected entries of a full-space vector.
    Vec sample(const Vec& full) const {
        Vec out(static_cast<Eigen::Index>(indices.size()));
        for (std::size_t i = 0; i < indices.size(); ++i) out(i) = full(indices[i] - 1);
        return out;
    }
    // Gathers the selected rows of a full-space matrix (P^T A).
    Mat sample_rows(const Mat& full) const {
        Mat out(static_cast<Eigen::Index>(indices.size()), full.cols());
        for (std::size_t i = 0; i < indices.size(); ++i) out.row(i) = full.row(indices[i] - 1);
        return out;
    }
};

struct AdaptiveDeimConfig {
    double alpha = 0.5;  // blend weight on the nonlinear-term residual
    Mat dwr_modes;       // W, left singular vectors of the dual-weighted residuals
    bool normalize_residuals = false;  // rescale |r^v|, |r^w| to unit max before blending
};

// Greedy interpolation-point selection on the columns of V: first index at
// the largest |v_1| entry, then each next index at the largest interpolation
// residual of the next column. Ties break to the smallest index. 1-based.
std::vector<int> deim_indices(const Mat& V);

// Greedy selection steered by a second residual stream: interpolate both the
// next nonlinear-term mode v_l and the next dual-weighted-residual mode w_l
// in the current V-subspace, then place the point at the largest blended
// magnitude alpha |r^v| + (1-alpha) |r^w|. Already-selected rows are masked
// so the selection stays nonsingular; columns of W beyond its width fall
// back to the pure |r^v| rule. 1-based.
std::vector<int> adaptive_deim_indices(const Mat& V, const Mat& W, double alpha,
                                       bool normalize_residuals = false);

DeimApproximation build_deim_operator(const Mat& U, const Mat& V,
                                      const std::vector<int>& indices);
DeimApproximation build_deim_operator(const PodBasis& U, const Mat& V,
                                      const std::vector<int>& indices);

// projector * f_sampled; cost independent of the full dimension.
Vec approximate_nonlinear(const DeimApproximation& deim, const Vec& f_sampled);

// 2-norm condition number of P^T V; +infinity when singular.
double selection_condition_number(const Mat& V, const std::vector<int>& indices);

}  // namespace rom

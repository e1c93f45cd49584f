#pragma once

#include <optional>
#include <string>

#include "rom/types.hpp"

namespace rom {

enum class SnapshotTag { forward_state, adjoint_state, nonlinear_term, dual_weighted_residual };

struct SnapshotMatrix {
    Mat data;                           // one column per snapshot
    std::vector<SnapshotTag> source_tags;  // one tag per column
};

struct PodBasis {
    Mat modes;            // orthonormal columns, Ns x k
    Vec singular_values;  // full spectrum from the SVD, non-increasing
    int k = 0;
    std::optional<double> gamma;  // set when k came from the energy criterion
};

// Truncation rule: either a fixed basis dimension or the smallest k whose
// cumulative singular-value fraction reaches gamma.
struct PodTruncation {
    static PodTruncation fixed(int k) { return {k, {}}; }
    static PodTruncation energy(double gamma) { return {0, gamma}; }
    int k = 0;
    std::optional<double> gamma;
};

// Horizontal concatenation of state sequences, each sequence under one tag.
SnapshotMatrix collect_snapshots(
    const std::vector<std::pair<std::vector<Vec>, SnapshotTag>>& groups);

PodBasis pod_basis(const SnapshotMatrix& snapshots, const PodTruncation& truncation);
PodBasis pod_basis(const Mat& snapshots, const PodTruncation& truncation);

// Smallest k whose leading partial sum of singular values reaches the
// fraction gamma of the total sum.
int energy_rank(const Vec& singular_values, double gamma);

// Flip every column so its largest-magnitude entry (smallest index on ties)
// is positive; makes SVD output deterministic across runs and platforms.
void canonicalize_mode_signs(Mat& modes);

inline Vec project(const PodBasis& basis, const Vec& x) {
    if (x.size() != basis.modes.rows())
        throw std::invalid_argument("project: dimension mismatch");
    return basis.modes.transpose() * x;
}

inline Vec lift(const PodBasis& basis, const Vec& xr) {
    if (xr.size() != basis.modes.cols())
        throw std::invalid_argument("lift: dimension mismatch");
    return basis.modes * xr;
}

}  // namespace rom

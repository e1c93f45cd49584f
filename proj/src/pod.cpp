#include "rom/pod.hpp"

#include <cmath>

namespace rom {

SnapshotMatrix collect_snapshots(
    const std::vector<std::pair<std::vector<Vec>, SnapshotTag>>& groups) {
    if (groups.empty()) throw std::invalid_argument("collect_snapshots: no snapshot groups");
    Eigen::Index rows = -1;
    Eigen::Index cols = 0;
    for (const auto& [states, tag] : groups) {
        for (const Vec& s : states) {
            if (rows < 0) rows = s.size();
            if (s.size() != rows)
                throw std::invalid_argument("collect_snapshots: snapshot dimension mismatch");
            ++cols;
        }
    }
    if (cols == 0) throw std::invalid_argument("collect_snapshots: no snapshot columns");
    SnapshotMatrix sm;
    sm.data.resize(rows, cols);
    sm.source_tags.reserve(cols);
    Eigen::Index c = 0;
    for (const auto& [states, tag] : groups)
        for (const Vec& s : states) {
            if (!s.allFinite())
                throw std::invalid_argument("collect_snapshots: non-finite snapshot");
            sm.data.col(c++) = s;
            sm.source_tags.push_back(tag);
        }
    return sm;
}

void canonicalize_mode_signs(Mat& modes) {
    for (Eigen::Index j = 0; j < modes.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < modes.rows(); ++i) {
            double a = std::abs(modes(i, j));
            if (a > best) {  // strict: ties keep the smallest index
                best = a;
                imax = i;
            }
        }
        if (modes(imax, j) < 0.0) modes.col(j) = -modes.col(j);
    }
}

int energy_rank(const Vec& singular_values, double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("energy_rank: gamma must lie in (0, 1]");
    if (singular_values.size() == 0)
        throw std::invalid_argument("energy_rank: empty singular-value list");
    // Smallest k with (sum of first k singular values) / (total sum) >= gamma.
    double total = singular_values.sum();
    double partial = 0.0;
    for (int i = 0; i < singular_values.size(); ++i) {
        partial += singular_values(i);
        if (partial / total >= gamma) return i + 1;
    }
    return static_cast<int>(singular_values.size());
}

PodBasis pod_basis(const Mat& snapshots, const PodTruncation& truncation) {
    if (snapshots.size() == 0) throw std::invalid_argument("pod_basis: empty snapshot matrix");
    if (snapshots.norm() == 0.0)
        throw std::invalid_argument("pod_basis: all-zero snapshot matrix is degenerate");

    Eigen::JacobiSVD<Mat> svd(snapshots, Eigen::ComputeThinU);
    const Vec& sv = svd.singularValues();

    int k;
    PodBasis basis;
    if (truncation.gamma) {
        k = energy_rank(sv, *truncation.gamma);
        basis.gamma = *truncation.gamma;
    } else {
        k = truncation.k;
        if (k < 1 || k > sv.size())
            throw std::invalid_argument("pod_basis: k out of range [1, " +
                                        std::to_string(sv.size()) + "]");
    }

    basis.modes = svd.matrixU().leftCols(k);
    canonicalize_mode_signs(basis.modes);
    basis.singular_values = sv;
    basis.k = k;
    return basis;
}

PodBasis pod_basis(const SnapshotMatrix& snapshots, const PodTruncation& truncation) {
    return pod_basis(snapshots.data, truncation);
}

}  // namespace rom

#include "rom/deim.hpp"

#include <cmath>
#include <limits>

namespace rom {

namespace {

// argmax of |v| over rows, smallest index on ties (strict improvement only);
// rows flagged in `masked` (when non-null) are skipped.
Eigen::Index argmax_abs(const Vec& v, const std::vector<bool>* masked = nullptr) {
    Eigen::Index best_i = -1;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (masked && (*masked)[static_cast<std::size_t>(i)]) continue;
        double a = std::abs(v(i));
        if (a > best) {
            best = a;
            best_i = i;
        }
    }
    if (best_i < 0) throw std::invalid_argument("argmax_abs: all rows masked");
    return best_i;
}

// 1-based selection indices must address distinct rows of V.
void validate_indices(const std::vector<int>& indices, Eigen::Index rows, const char* where) {
    std::vector<bool> seen(static_cast<std::size_t>(rows), false);
    for (int i : indices) {
        if (i < 1 || i > rows)
            throw std::invalid_argument(std::string(where) + ": index " + std::to_string(i) +
                                        " outside 1.." + std::to_string(rows));
        if (seen[static_cast<std::size_t>(i - 1)])
            throw std::invalid_argument(std::string(where) + ": duplicate index " +
                                        std::to_string(i));
        seen[static_cast<std::size_t>(i - 1)] = true;
    }
}

Mat gather_rows(const Mat& A, const std::vector<int>& rows0) {
    Mat out(static_cast<Eigen::Index>(rows0.size()), A.cols());
    for (std::size_t i = 0; i < rows0.size(); ++i) out.row(i) = A.row(rows0[i]);
    return out;
}

Vec gather(const Vec& v, const std::vector<int>& rows0) {
    Vec out(static_cast<Eigen::Index>(rows0.size()));
    for (std::size_t i = 0; i < rows0.size(); ++i) out(i) = v(rows0[i]);
    return out;
}

// Solve (P^T V) c = P^T y for the current selection; throws on singularity.
Vec interpolation_coefficients(const Mat& V, const std::vector<int>& sel0, Eigen::Index ncols,
                               const Vec& y, int step) {
    Mat PtV = gather_rows(V.leftCols(ncols), sel0);
    Eigen::FullPivLU<Mat> lu(PtV);
    if (!lu.isInvertible())
        throw linear_solve_error("deim: singular interpolation system at step " +
                                 std::to_string(step));
    return lu.solve(gather(y, sel0));
}

}  // namespace

std::vector<int> deim_indices(const Mat& V) {
    const Eigen::Index m = V.cols();
    if (m < 1) throw std::invalid_argument("deim_indices: V has no columns");
    std::vector<int> sel0;  // 0-based while growing
    sel0.reserve(m);
    sel0.push_back(static_cast<int>(argmax_abs(V.col(0))));
    for (Eigen::Index l = 1; l < m; ++l) {
        Vec c = interpolation_coefficients(V, sel0, l, V.col(l), static_cast<int>(l) + 1);
        Vec r = V.col(l) - V.leftCols(l) * c;
        if (r.lpNorm<Eigen::Infinity>() == 0.0)
            throw std::invalid_argument("deim_indices: column " + std::to_string(l + 1) +
                                        " is interpolated exactly (rank-deficient V)");
        sel0.push_back(static_cast<int>(argmax_abs(r)));
    }
    std::vector<int> indices(sel0.size());
    for (std::size_t i = 0; i < sel0.size(); ++i) indices[i] = sel0[i] + 1;
    return indices;
}

std::vector<int> adaptive_deim_indices(const Mat& V, const Mat& W, double alpha,
                                       bool normalize_residuals) {
    const Eigen::Index m = V.cols();
    if (m < 1) throw std::invalid_argument("adaptive_deim_indices: V has no columns");
    if (W.cols() < 1 || W.rows() != V.rows())
        throw std::invalid_argument("adaptive_deim_indices: W shape mismatch");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("adaptive_deim_indices: alpha must lie in [0, 1]");

    std::vector<bool> taken(static_cast<std::size_t>(V.rows()), false);
    std::vector<int> sel0;
    sel0.reserve(m);

    // First point: whichever first mode peaks higher, |v_1| or |w_1|.
    Eigen::Index iv = argmax_abs(V.col(0));
    Eigen::Index iw = argmax_abs(W.col(0));
    sel0.push_back(static_cast<int>(
        std::abs(V(iv, 0)) >= std::abs(W(iw, 0)) ? iv : iw));
    taken[static_cast<std::size_t>(sel0.back())] = true;

    for (Eigen::Index l = 1; l < m; ++l) {
        Vec cv = interpolation_coefficients(V, sel0, l, V.col(l), static_cast<int>(l) + 1);
        Vec rv = (V.col(l) - V.leftCols(l) * cv).cwiseAbs();
        Vec blended;
        if (l < W.cols()) {
            Vec cw = interpolation_coefficients(V, sel0, l, W.col(l), static_cast<int>(l) + 1);
            Vec rw = (W.col(l) - V.leftCols(l) * cw).cwiseAbs();
            if (normalize_residuals) {
                double mv = rv.maxCoeff();
                double mw = rw.maxCoeff();
                if (mv > 0.0) rv /= mv;
                if (mw > 0.0) rw /= mw;
            }
            blended = alpha * rv + (1.0 - alpha) * rw;
        } else {
            blended = rv;  // dual-weighted stream exhausted
        }
        Eigen::Index pick = argmax_abs(blended, &taken);
        sel0.push_back(static_cast<int>(pick));
        taken[static_cast<std::size_t>(pick)] = true;
    }

    std::vector<int> indices(sel0.size());
    for (std::size_t i = 0; i < sel0.size(); ++i) indices[i] = sel0[i] + 1;
    return indices;
}

DeimApproximation build_deim_operator(const Mat& U, const Mat& V,
                                      const std::vector<int>& indices) {
    if (static_cast<Eigen::Index>(indices.size()) != V.cols())
        throw std::invalid_argument("build_deim_operator: index count must equal columns of V");
    validate_indices(indices, V.rows(), "build_deim_operator");
    DeimApproximation deim;
    deim.nonlinear_modes = V;
    deim.indices = indices;
    Mat PtV = deim.sample_rows(V);
    Eigen::FullPivLU<Mat> lu(PtV);
    if (!lu.isInvertible())
        throw linear_solve_error(
            "build_deim_operator: P^T V is singular (condition number " +
            std::to_string(selection_condition_number(V, indices)) + ")");
    // U^T V (P^T V)^{-1}, assembled once; solve on the transpose for stability.
    Mat UtV = U.transpose() * V;
    Mat solved = lu.transpose().solve(UtV.transpose());
    deim.projector = solved.transpose();
    return deim;
}

DeimApproximation build_deim_operator(const PodBasis& U, const Mat& V,
                                      const std::vector<int>& indices) {
    return build_deim_operator(U.modes, V, indices);
}

Vec approximate_nonlinear(const DeimApproximation& deim, const Vec& f_sampled) {
    if (f_sampled.size() != deim.projector.cols())
        throw std::invalid_argument("approximate_nonlinear: sampled length mismatch");
    return deim.projector * f_sampled;
}

double selection_condition_number(const Mat& V, const std::vector<int>& indices) {
    validate_indices(indices, V.rows(), "selection_condition_number");
    Mat PtV(static_cast<Eigen::Index>(indices.size()), V.cols());
    for (std::size_t i = 0; i < indices.size(); ++i) PtV.row(i) = V.row(indices[i] - 1);
    if (PtV.rows() != PtV.cols())
        throw std::invalid_argument("selection_condition_number: P^T V must be square");
    Eigen::JacobiSVD<Mat> svd(PtV);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

}  // namespace rom

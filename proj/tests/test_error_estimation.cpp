#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rom/error_estimation.hpp"
#include "rom/pipeline.hpp"

using rom::Mat;
using rom::Vec;

namespace {

rom::PodBasis identity_basis(int n) {
    rom::PodBasis b;
    b.modes = Mat::Identity(n, n);
    b.singular_values = Vec::Ones(n);
    b.k = n;
    return b;
}

rom::ReducedModel exact_reduction(const rom::BurgersModel& burgers) {
    auto model = rom::as_discrete_model(burgers);
    auto basis = identity_basis(burgers.dim);
    Mat V = Mat::Identity(burgers.dim, burgers.dim);
    std::vector<int> idx(static_cast<std::size_t>(burgers.dim));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i) + 1;
    return rom::make_reduced_model(basis, model,
                                   rom::build_deim_operator(basis.modes, V, idx));
}

// Small implicit test problem with a deliberately coarse reduction.
struct SmallCase {
    rom::ExperimentConfig cfg;
    rom::FomResult fom;
    rom::BasisSet bases;
    rom::ReducedModel romod;
    rom::ReducedTrajectory rtraj;
    rom::QuantityOfInterest q;
};

const SmallCase& small_case() {
    static SmallCase s = [] {
        SmallCase out;
        out.cfg.n_grid = 30;
        out.cfg.t_final = 0.486;
        out.cfg.num_steps = 10;
        out.cfg.ic_root1 = 0.389;
        out.cfg.ic_root2 = 0.735;
        out.cfg.ic_root3 = 0.918;
        out.cfg.ic_peak = 1.43;
        out.cfg.ic_sign = -1.0;
        out.cfg.deim_points = 10;
        out.cfg.pod_dim = 6;
        out.fom = rom::run_fom(out.cfg);
        out.bases = rom::build_bases(out.cfg, out.fom);
        auto basis = rom::truncate_basis(out.bases.state, 6);
        Mat V = out.bases.nl_modes.leftCols(10);
        auto deim = rom::build_deim_operator(basis.modes, V, rom::deim_indices(V));
        out.romod =
            rom::make_reduced_model(basis, rom::as_discrete_model(out.fom.burgers), deim);
        out.rtraj = rom::integrate_rom(out.romod, rom::project(basis, out.fom.x0),
                                       out.fom.grid, rom::Scheme::implicit_euler);
        out.q = rom::make_burgers_qoi(out.fom.burgers, out.fom.grid.num_steps);
        return out;
    }();
    return s;
}

// Baseline-sized implicit case used for the dual-weighted residual layout.
struct BaselineCase {
    rom::ExperimentConfig cfg;
    rom::FomResult fom;
    rom::BasisSet bases;
    rom::ReducedModel romod;
    rom::ReducedTrajectory rtraj;
    rom::QuantityOfInterest q;
};

const BaselineCase& baseline_case() {
    static BaselineCase b = [] {
        BaselineCase out;
        out.fom = rom::run_fom(out.cfg);
        out.bases = rom::build_bases(out.cfg, out.fom);
        auto basis = rom::truncate_basis(out.bases.state, 15);
        Mat V = out.bases.nl_modes.leftCols(40);
        auto deim = rom::build_deim_operator(basis.modes, V, rom::deim_indices(V));
        out.romod =
            rom::make_reduced_model(basis, rom::as_discrete_model(out.fom.burgers), deim);
        out.rtraj = rom::integrate_rom(out.romod, rom::project(basis, out.fom.x0),
                                       out.fom.grid, rom::Scheme::implicit_euler);
        out.q = rom::make_burgers_qoi(out.fom.burgers, out.fom.grid.num_steps);
        return out;
    }();
    return b;
}

}  // namespace

TEST_CASE("full explicit trajectory has vanishing one-step defects") {
    auto burgers = rom::build_burgers(25, 1.0, 0.1);
    auto model = rom::as_discrete_model(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.02, 10);
    auto traj = rom::integrate(model, u0, grid, rom::Scheme::explicit_euler);
    auto series = rom::residuals_explicit(traj, model, grid.h, u0);
    REQUIRE(series.residuals.size() == 11);
    CHECK(series.residuals[0].norm() == 0.0);  // no initial projection error
    for (std::size_t i = 1; i < series.residuals.size(); ++i)
        CHECK(series.residuals[i].norm() <= 1e-14);
}

TEST_CASE("full implicit trajectory leaves only solver-tolerance defects") {
    auto burgers = rom::build_burgers(25, 1.0, 0.1);
    auto model = rom::as_discrete_model(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.2, 10);
    rom::NewtonSettings settings;
    auto traj = rom::integrate(model, u0, grid, rom::Scheme::implicit_euler, settings);
    auto series = rom::residuals_implicit(traj, model, grid.h, u0);
    for (std::size_t i = 1; i < series.residuals.size(); ++i)
        CHECK(series.residuals[i].norm() <= settings.tol);
}

TEST_CASE("zero dynamics produce zero defects") {
    rom::DiscreteModel zero;
    zero.dim = 4;
    zero.rhs = [](const Vec& x) { return Vec(Vec::Zero(x.size())); };
    zero.rhs_jacobian = [](const Vec& x) { return Mat(Mat::Zero(x.size(), x.size())); };
    rom::Trajectory traj;
    traj.grid = rom::TimeGrid(1.0, 3);
    Vec c = Vec::Constant(4, 2.5);
    for (int i = 0; i < 4; ++i) traj.states.push_back(c);
    auto series = rom::residuals_explicit(traj, zero, traj.grid.h, c);
    for (const auto& r : series.residuals) CHECK(r.norm() == 0.0);
}

TEST_CASE("one full step from a lifted state is the negated defect") {
    const auto& s = small_case();
    auto model = rom::as_discrete_model(s.fom.burgers);
    auto lifted = rom::lift_trajectory(s.romod, s.rtraj);
    // Explicit defects computed on the lifted trajectory satisfy
    //   step_explicit(x^_i) - x^_{i+1} = -phi_{i+1}.
    auto series = rom::residuals_explicit(lifted, model, s.fom.grid.h, s.fom.x0);
    for (int i = 0; i < 3; ++i) {
        Vec one_step = rom::step_explicit(model, lifted.states[static_cast<std::size_t>(i)],
                                          s.fom.grid.h);
        Vec diff = one_step - lifted.states[static_cast<std::size_t>(i + 1)];
        CHECK((diff + series.residuals[static_cast<std::size_t>(i + 1)]).norm() <=
              1e-13 * (1.0 + diff.norm()));
    }
}

TEST_CASE("initial defect slot is orthogonal to the basis span") {
    const auto& s = small_case();
    auto lifted = rom::lift_trajectory(s.romod, s.rtraj);
    auto series =
        rom::residuals_implicit(lifted, rom::as_discrete_model(s.fom.burgers),
                                s.fom.grid.h, s.fom.x0);
    Vec in_span = s.romod.basis.modes.transpose() * series.residuals[0];
    CHECK(in_span.norm() <= 1e-10);
}

TEST_CASE("oracle estimate vanishes when nothing is truncated") {
    auto burgers = rom::build_burgers(30, 1.0, 0.1);
    auto romod = exact_reduction(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.3, 10);
    auto q = rom::make_burgers_qoi(burgers, grid.num_steps);
    rom::OracleSettings settings;
    auto report = rom::estimate_error_oracle(rom::as_discrete_model(burgers), romod, q, grid,
                                             u0, settings);
    CHECK(std::abs(report.estimated_error) <= 1e-8);
    CHECK(std::abs(report.true_error) <= 1e-8);
}

TEST_CASE("oracle estimate tracks the true error on a coarse reduction") {
    const auto& s = small_case();
    rom::OracleSettings settings;
    auto report = rom::estimate_error_oracle(rom::as_discrete_model(s.fom.burgers), s.romod,
                                             s.q, s.fom.grid, s.fom.x0, settings);
    REQUIRE(std::abs(report.true_error) > 0.0);
    CHECK(std::abs(report.estimated_error - report.true_error) <=
          0.2 * std::abs(report.true_error));

    rom::OracleSettings single;
    single.single_trajectory_adjoint = true;
    auto cheap = rom::estimate_error_oracle(rom::as_discrete_model(s.fom.burgers), s.romod,
                                            s.q, s.fom.grid, s.fom.x0, single);
    CHECK(std::abs(cheap.estimated_error - report.estimated_error) <=
          0.1 * std::abs(report.estimated_error));
}

TEST_CASE("fast explicit estimate vanishes when nothing is truncated") {
    auto burgers = rom::build_burgers(30, 1.0, 0.1);
    auto romod = exact_reduction(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.01, 20);  // stable explicit step for this grid
    auto q = rom::make_burgers_qoi(burgers, grid.num_steps);
    auto rtraj = rom::integrate_rom(romod, u0, grid, rom::Scheme::explicit_euler);
    auto report = rom::estimate_error_fast_explicit(romod, rtraj, q, grid, u0);
    CHECK(std::abs(report.estimated_error) <= 1e-8);
    // The per-step decomposition always sums to the estimate.
    double sum = 0.0;
    for (double c : report.per_step_contributions) sum += c;
    CHECK(std::abs(sum - report.estimated_error) <=
          1e-12 * std::max(1.0, std::abs(report.estimated_error)));
}

TEST_CASE("fast implicit estimate vanishes when nothing is truncated") {
    auto burgers = rom::build_burgers(30, 1.0, 0.1);
    auto romod = exact_reduction(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.3, 10);
    auto q = rom::make_burgers_qoi(burgers, grid.num_steps);
    auto rtraj = rom::integrate_rom(romod, u0, grid, rom::Scheme::implicit_euler);
    auto report = rom::estimate_error_fast_implicit(romod, rtraj, q, grid, u0);
    CHECK(std::abs(report.estimated_error) <= 1e-8);
}

TEST_CASE("fast implicit estimate lands within a factor of two on a coarse reduction") {
    const auto& s = small_case();
    auto report = rom::estimate_error_fast_implicit(s.romod, s.rtraj, s.q, s.fom.grid,
                                                    s.fom.x0);
    double truth = rom::true_error(rom::as_discrete_model(s.fom.burgers), s.romod, s.q,
                                   s.fom.grid, rom::Scheme::implicit_euler, s.fom.x0);
    REQUIRE(std::abs(truth) > 0.0);
    CHECK(report.estimated_error != 0.0);
    double ratio = report.estimated_error / truth;
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
    CHECK(std::abs(report.estimated_error - truth) < std::abs(truth));
    // Per-step contributions sum to the estimate.
    double sum = 0.0;
    for (double c : report.per_step_contributions) sum += c;
    CHECK(std::abs(sum - report.estimated_error) <= 1e-12 * std::abs(report.estimated_error));
}

TEST_CASE("fast explicit estimate lands within a factor of two on a stable configuration") {
    rom::ExperimentConfig cfg;
    cfg.n_grid = 81;
    cfg.t_final = 0.12;
    cfg.num_steps = 200;
    cfg.scheme = rom::Scheme::explicit_euler;
    cfg.ic_root1 = 0.425;
    cfg.ic_root2 = 0.724;
    cfg.ic_root3 = 0.913;
    cfg.ic_peak = 3.0;
    cfg.ic_sign = -1.0;
    cfg.deim_points = 40;
    auto fom = rom::run_fom(cfg);
    auto bases = rom::build_bases(cfg, fom);
    auto basis = rom::truncate_basis(bases.state, 20);
    Mat V = bases.nl_modes.leftCols(40);
    auto deim = rom::build_deim_operator(basis.modes, V, rom::deim_indices(V));
    auto romod = rom::make_reduced_model(basis, rom::as_discrete_model(fom.burgers), deim);
    auto rtraj = rom::integrate_rom(romod, rom::project(basis, fom.x0), fom.grid,
                                    rom::Scheme::explicit_euler);
    auto q = rom::make_burgers_qoi(fom.burgers, fom.grid.num_steps);
    auto report = rom::estimate_error_fast_explicit(romod, rtraj, q, fom.grid, fom.x0);
    double truth = rom::true_error(rom::as_discrete_model(fom.burgers), romod, q, fom.grid,
                                   rom::Scheme::explicit_euler, fom.x0);
    REQUIRE(std::abs(truth) > 0.0);
    double ratio = report.estimated_error / truth;
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
}

TEST_CASE("weighted residuals sum to the fast estimate") {
    const auto& s = small_case();
    auto dwr = rom::dual_weighted_residuals(s.romod, s.rtraj, s.q, s.fom.grid,
                                            rom::Scheme::implicit_euler, s.fom.x0);
    auto report = rom::estimate_error_fast_implicit(s.romod, s.rtraj, s.q, s.fom.grid,
                                                    s.fom.x0);
    double grand = rom::signed_grand_sum(dwr);
    CHECK(std::abs(grand - report.estimated_error) <=
          1e-12 * std::max(1.0, std::abs(report.estimated_error)));
    // Matrix layout mirrors the vector sequence column for column.
    REQUIRE(dwr.matrix_form.cols() == static_cast<Eigen::Index>(dwr.z.size()));
    for (std::size_t i = 0; i < dwr.z.size(); ++i)
        CHECK((dwr.matrix_form.col(static_cast<Eigen::Index>(i)) - dwr.z[i]).norm() == 0.0);
}

TEST_CASE("weighted residuals of the zero functional vanish") {
    const auto& s = small_case();
    rom::QuantityOfInterest q0;
    q0.num_steps = s.fom.grid.num_steps;
    q0.term = [](int, const Vec&) { return 0.0; };
    q0.term_gradient = [](int, const Vec& x) { return Vec(Vec::Zero(x.size())); };
    auto dwr = rom::dual_weighted_residuals(s.romod, s.rtraj, q0, s.fom.grid,
                                            rom::Scheme::implicit_euler, s.fom.x0);
    for (const auto& z : dwr.z) CHECK(z.norm() == 0.0);
}

TEST_CASE("terminal weighted residual concentrates near the sensor window") {
    const auto& b = baseline_case();
    auto dwr = rom::dual_weighted_residuals(b.romod, b.rtraj, b.q, b.fom.grid,
                                            rom::Scheme::implicit_euler, b.fom.x0);
    Vec znt = dwr.z.back().cwiseAbs();
    Vec coords = rom::interior_coordinates(b.fom.burgers);
    // Rank entries by magnitude and look at the top decile.
    std::vector<int> order(static_cast<std::size_t>(znt.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int c) { return znt(a) > znt(c); });
    int top = static_cast<int>(znt.size()) / 10;
    int inside = 0;
    for (int r = 0; r < top; ++r)
        if (coords(order[static_cast<std::size_t>(r)]) <= 0.2) ++inside;
    CHECK(inside >= top / 2);
    CHECK(coords(order[0]) <= 0.2);  // the single largest entry sits near the window
}

TEST_CASE("weighted-residual basis of a rank-one matrix is its normalized generator") {
    std::mt19937_64 gen = oracle::rng(301);
    Vec u = oracle::random_vec(gen, 12);
    Vec w = oracle::random_vec(gen, 7);
    Mat Z = u * w.transpose();
    Mat W = rom::dwr_basis(Z, 1);
    REQUIRE(W.cols() == 1);
    Vec dir = u / u.norm();
    CHECK(std::abs(std::abs(W.col(0).dot(dir)) - 1.0) <= 1e-10);
    int argmax = 0;
    W.col(0).cwiseAbs().maxCoeff(&argmax);
    CHECK(W(argmax, 0) > 0.0);
}

TEST_CASE("weighted-residual basis orders orthogonal columns by magnitude") {
    Mat Z = Mat::Zero(6, 3);
    Z(1, 0) = 2.0;   // norm 2
    Z(3, 1) = 5.0;   // norm 5 (dominant)
    Z(4, 2) = 1.0;   // norm 1
    Mat W = rom::dwr_basis(Z, 3);
    REQUIRE(W.cols() == 3);
    CHECK(std::abs(W(3, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(W(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(W(4, 2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted-residual basis columns are orthonormal at the working width") {
    std::mt19937_64 gen = oracle::rng(307);
    Mat Z = oracle::random_mat(gen, 50, 30);
    Mat W = rom::dwr_basis(Z, 15);
    REQUIRE(W.cols() == 15);
    CHECK((W.transpose() * W - Mat::Identity(15, 15)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK_THROWS_AS(rom::dwr_basis(Z, 0), std::invalid_argument);
    CHECK_THROWS_AS(rom::dwr_basis(Z, 31), std::invalid_argument);
}

TEST_CASE("true error vanishes without truncation and flips sign with the functional") {
    auto burgers = rom::build_burgers(30, 1.0, 0.1);
    auto romod = exact_reduction(burgers);
    Vec u0 = rom::initial_condition(burgers);
    rom::TimeGrid grid(0.3, 10);
    auto q = rom::make_burgers_qoi(burgers, grid.num_steps);
    auto model = rom::as_discrete_model(burgers);
    CHECK(std::abs(rom::true_error(model, romod, q, grid, rom::Scheme::implicit_euler,
                                   u0)) <= 1e-9);

    const auto& s = small_case();
    auto smodel = rom::as_discrete_model(s.fom.burgers);
    double plus = rom::true_error(smodel, s.romod, s.q, s.fom.grid,
                                  rom::Scheme::implicit_euler, s.fom.x0);
    rom::QuantityOfInterest neg;
    neg.num_steps = s.q.num_steps;
    neg.term = [&s](int i, const Vec& x) { return -s.q.term(i, x); };
    neg.term_gradient = [&s](int i, const Vec& x) { return Vec(-s.q.term_gradient(i, x)); };
    double minus = rom::true_error(smodel, s.romod, neg, s.fom.grid,
                                   rom::Scheme::implicit_euler, s.fom.x0);
    CHECK(minus == doctest::Approx(-plus).epsilon(1e-12));
}

TEST_CASE("crude single-mode reduction reproduces the direct error recomputation") {
    const auto& s = small_case();
    auto basis = rom::truncate_basis(s.bases.state, 1);
    Mat V = s.bases.nl_modes.leftCols(1);
    auto deim = rom::build_deim_operator(basis.modes, V, rom::deim_indices(V));
    auto model = rom::as_discrete_model(s.fom.burgers);
    auto romod = rom::make_reduced_model(basis, model, deim);
    double via_report = rom::true_error(model, romod, s.q, s.fom.grid,
                                        rom::Scheme::implicit_euler, s.fom.x0);
    auto rtraj = rom::integrate_rom(romod, rom::project(basis, s.fom.x0), s.fom.grid,
                                    rom::Scheme::implicit_euler);
    double direct =
        s.fom.qoi_value - rom::qoi_eval(s.q, rom::lift_trajectory(romod, rtraj));
    CHECK(via_report == doctest::Approx(direct).epsilon(1e-12));
}

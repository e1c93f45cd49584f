#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace rom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Scheme { explicit_euler, implicit_euler };

inline const char* scheme_name(Scheme s) {
    return s == Scheme::explicit_euler ? "explicit" : "implicit";
}

// Thrown for malformed user configuration (CLI exit code 2).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solver fails to reach tolerance (CLI exit code 3).
struct convergence_error : std::runtime_error {
    double last_residual_norm;
    int iterations;
    convergence_error(const std::string& what, double res, int iters)
        : std::runtime_error(what), last_residual_norm(res), iterations(iters) {}
};

// Thrown when a linear system inside a solver is singular (CLI exit code 3).
struct linear_solve_error : std::runtime_error {
    explicit linear_solve_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a required input file is absent (CLI exit code 4).
struct missing_artifact_error : std::runtime_error {
    explicit missing_artifact_error(const std::string& what) : std::runtime_error(what) {}
};

struct NewtonSettings {
    double tol = 1e-10;
    int max_iter = 50;
};

struct TimeGrid {
    double h = 0.0;
    int num_steps = 0;
    double t_final = 0.0;

    TimeGrid() = default;
    TimeGrid(double t_final_, int num_steps_) : num_steps(num_steps_), t_final(t_final_) {
        if (num_steps <= 0) throw config_error("TimeGrid: num_steps must be positive");
        if (!(t_final > 0.0)) throw config_error("TimeGrid: t_final must be positive");
        h = t_final / num_steps;
    }
};

struct Trajectory {
    std::vector<Vec> states;  // x_0 .. x_Nt
    TimeGrid grid;
};

inline void check_finite(const Vec& v, const std::string& where) {
    if (!v.allFinite()) throw std::runtime_error(where + ": non-finite values encountered");
}

}  // namespace rom

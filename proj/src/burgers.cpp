#include "rom/burgers.hpp"

#include <cmath>

namespace rom {

BurgersModel build_burgers(int n_grid, double length, double viscosity) {
    if (n_grid < 4) throw std::invalid_argument("build_burgers: n_grid must be >= 4");
    if (!(length > 0.0)) throw std::invalid_argument("build_burgers: length must be positive");
    if (!(viscosity > 0.0))
        throw std::invalid_argument("build_burgers: viscosity must be positive");

    BurgersModel m;
    m.n_grid = n_grid;
    m.dim = n_grid - 2;
    m.length = length;
    m.dx = length / (n_grid - 1);
    m.viscosity = viscosity;

    const int ns = m.dim;
    m.d1 = Mat::Zero(ns, ns);
    m.d2 = Mat::Zero(ns, ns);
    const double c1 = 1.0 / (2.0 * m.dx);
    const double c2 = 1.0 / (m.dx * m.dx);
    for (int i = 0; i < ns; ++i) {
        if (i > 0) {
            m.d1(i, i - 1) = -c1;
            m.d2(i, i - 1) = c2;
        }
        m.d2(i, i) = -2.0 * c2;
        if (i < ns - 1) {
            m.d1(i, i + 1) = c1;
            m.d2(i, i + 1) = c2;
        }
        // neighbours beyond the ends are the eliminated zero boundary values
    }
    return m;
}

Vec burgers_rhs(const BurgersModel& model, const Vec& u) {
    if (u.size() != model.dim) throw std::invalid_argument("burgers_rhs: dimension mismatch");
    return (-u.array() * (model.d1 * u).array()).matrix() + model.viscosity * (model.d2 * u);
}

Mat burgers_jacobian(const BurgersModel& model, const Vec& u) {
    if (u.size() != model.dim)
        throw std::invalid_argument("burgers_jacobian: dimension mismatch");
    Mat J = -(u.asDiagonal() * model.d1) + model.viscosity * model.d2;
    J.diagonal() -= model.d1 * u;
    return J;
}

Vec interior_coordinates(const BurgersModel& model) {
    Vec x(model.dim);
    for (int i = 0; i < model.dim; ++i) x(i) = (i + 1) * model.dx;
    return x;
}

namespace {

double profile(double x, double L, double a, double r1, double r2, double r3) {
    return a * x * x * (L - x) * (L - x) * (x - r1) * (x - r2) * (x - r3);
}

}  // namespace

Vec initial_condition(const BurgersModel& model, double a, double r1, double r2, double r3) {
    Vec u0(model.dim);
    const Vec x = interior_coordinates(model);
    for (int i = 0; i < model.dim; ++i)
        u0(i) = profile(x(i), model.length, a, r1, r2, r3);
    return u0;
}

double normalized_ic_amplitude(const BurgersModel& model, double r1, double r2, double r3,
                               double peak, double sign) {
    // Dense sampling is adequate: the profile is a degree-7 polynomial.
    const int samples = 200001;
    double max_abs = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = model.length * i / (samples - 1);
        max_abs = std::max(max_abs, std::abs(profile(x, model.length, 1.0, r1, r2, r3)));
    }
    if (max_abs == 0.0)
        throw std::invalid_argument("normalized_ic_amplitude: degenerate root configuration");
    double near_zero = profile(0.02 * model.length, model.length, 1.0, r1, r2, r3);
    double a = peak / max_abs;
    if (near_zero * sign < 0.0) a = -a;
    return a;
}

Vec initial_condition(const BurgersModel& model) {
    const double r1 = 1.2, r2 = 1.5, r3 = 2.0;
    double a = normalized_ic_amplitude(model, r1, r2, r3, 1.0, +1.0);
    return initial_condition(model, a, r1, r2, r3);
}

DiscreteModel as_discrete_model(const BurgersModel& model) {
    DiscreteModel dm;
    dm.dim = model.dim;
    dm.params = Vec::Constant(1, model.viscosity);
    dm.rhs = [model](const Vec& u) { return burgers_rhs(model, u); };
    dm.rhs_jacobian = [model](const Vec& u) { return burgers_jacobian(model, u); };
    return dm;
}

}  // namespace rom

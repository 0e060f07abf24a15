// Uniqueness-condition certificates (definiteness of the cost and
// Hamiltonian coupling matrices, the quadratic form over fields) and runtime
// diagnostics (mass, bounds, entropy, energy-gap pairing of two solutions).
#pragma once

#include <vector>

#include "core/coupler.hpp"
#include "core/hamiltonian.hpp"

namespace mfc {

// Small dense symmetric matrix (3x3 in the coupling checks, any n for the
// definiteness test itself).
struct SymMatrix {
    int n = 0;
    std::vector<double> a;  // row-major

    static SymMatrix zero(int n) { return {n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)}; }
    double& at(int i, int j) { return a[static_cast<size_t>(i * n + j)]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i * n + j)]; }
};

// Control cost induced by a local Hamiltonian through the Legendre
// transform, with the derivatives needed by the coupling matrix: analytic
// for beta = 2, centered finite differences of the numerical transform
// otherwise.
struct CostSpec {
    LocalHamiltonianSpec ham;

    double value(const Vec2& v, double m) const;
    // d^2/dm^2 of m*f(v,m).
    double mass_curvature(const Vec2& v, double m) const;
    // d/dm of grad_v f.
    Vec2 mixed_deriv(const Vec2& v, double m) const;
    // Hessian in v as (xx, xy, yy).
    std::array<double, 3> vel_hessian(const Vec2& v, double m) const;
};

// Theta = [[d2/dm2(m f), m (dm grad_v f)^T], [m dm grad_v f, m D2vv f]].
SymMatrix theta_matrix(const CostSpec& cost, const Vec2& v, double m);

// [[2 dH/dm, -(dm grad_p H)^T], [-dm grad_p H, -2 D2pp H]].
SymMatrix mfg_condition_matrix(const LocalHamiltonianSpec& spec, const Vec2& p, double m);

// True iff every pivot of the symmetric LDL^T factorization exceeds
// 1e-10 times the matrix max-norm. Asymmetric input is rejected.
bool is_positive_definite(const SymMatrix& mat);

// d^2/dm^2 of m*H(p,m) for the local family; the integrand weight of the
// density part of the quadratic form.
double ham_mass_curvature(const LocalHamiltonianSpec& spec, const Vec2& p, double m);

// Q = h^2 sum over free cells of [ham_mass_curvature * mu^2
//                                 - m * pi^T D2pp H pi], m > 0 required.
double quadratic_form_Q(const LocalHamiltonianSpec& spec, const ScalarField& m,
                        const VectorField& p, const ScalarField& mu,
                        const VectorField& pi);

struct DiagnosticsReport {
    std::vector<double> times;
    std::vector<double> mass;     // h^2 * sum m
    std::vector<double> min_m;
    std::vector<double> max_m;
    std::vector<double> entropy;  // h^2 * sum m log m, 0 log 0 = 0
};

DiagnosticsReport run_diagnostics(const Solution& sol, const Grid2D& grid, double dt);

// Discrete value of the uniqueness energy pairing for two solutions sharing
// initial and terminal data: the boundary terms plus the time-integrated
// coupling difference (trapezoid rule, centered gradients). Exactly zero for
// identical solutions; a quadrature-accuracy diagnostic otherwise.
double energy_gap(const Solution& a, const Solution& b, const Grid2D& grid,
                  const HamiltonianSpec& spec, double dt, double exit_cost = 0.0);

}  // namespace mfc

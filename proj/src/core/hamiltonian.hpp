// Congestion Hamiltonian families: pointwise values and derivatives, the
// control-cost Legendre transform, the Godunov upwind numerical Hamiltonian,
// and the nonlocal convolution coupling term.
#pragma once

#include <array>
#include <variant>

#include "core/grid.hpp"

namespace mfc {

// Running cost F(m): either a constant or a*m^2 + b.
struct RunningCost {
    enum class Kind { Constant, Quadratic };
    Kind kind = Kind::Constant;
    double a = 0.0;
    double b = 0.0;

    static RunningCost constant(double value) { return {Kind::Constant, 0.0, value}; }
    static RunningCost quadratic(double a, double b) { return {Kind::Quadratic, a, b}; }

    double value(double m) const { return kind == Kind::Constant ? b : a * m * m + b; }
    double d1(double m) const { return kind == Kind::Constant ? 0.0 : 2.0 * a * m; }
    double d2(double) const { return kind == Kind::Constant ? 0.0 : 2.0 * a; }
};

// H(x,p,m) = -cH*|p|^beta/(offset+m)^alpha + F(m).
struct LocalHamiltonianSpec {
    double cH = 8.0;
    double alpha = 0.75;
    double beta = 2.0;
    double offset = 1.0;
    RunningCost F = RunningCost::constant(0.0);

    void validate() const;
};

// H(x,p) = -|p|^beta/(offset + (rho*m)(x))^alpha on a periodic grid; the
// m-coupling enters through the convolution, not pointwise.
struct NonlocalHamiltonianSpec {
    double alpha = 1.0;
    double beta = 2.0;
    double offset = 1.0;
    ScalarField kernel;          // rho >= 0, one weight per cell
    ScalarField kernel_flipped;  // rho_tilde(z) = rho(-z), precomputed
    double kernel_l1 = 0.0;      // h^2 * sum(rho)

    static NonlocalHamiltonianSpec make(double alpha, double beta, double offset,
                                        ScalarField kernel);
    void validate() const;
};

using HamiltonianSpec = std::variant<LocalHamiltonianSpec, NonlocalHamiltonianSpec>;

// ---- Pointwise evaluation (local family) ----
double ham_value(const LocalHamiltonianSpec& spec, const Vec2& p, double m);
Vec2 ham_grad_p(const LocalHamiltonianSpec& spec, const Vec2& p, double m);
double ham_deriv_m(const LocalHamiltonianSpec& spec, const Vec2& p, double m);
double mftc_effective_hamiltonian(const LocalHamiltonianSpec& spec, const Vec2& p, double m);

// Variant of ham_deriv_m taking |p|^beta directly, so callers can substitute
// the upwind gradient magnitude for the centered one.
double ham_deriv_m_gradpow(const LocalHamiltonianSpec& spec, double p_pow_beta, double m);

// Hessian in p as (xx, xy, yy); singular at p = 0 when beta != 2 (rejected).
std::array<double, 3> ham_hess_pp(const LocalHamiltonianSpec& spec, const Vec2& p, double m);

// Control cost f(x,v,m) = max_q (H(x,q,m) - q.v): closed form for beta = 2,
// bounded one-dimensional maximization otherwise.
double legendre_cost(const LocalHamiltonianSpec& spec, const Vec2& v, double m);
// Always runs the numerical maximization; used to cross-check the closed form.
double legendre_cost_numeric(const LocalHamiltonianSpec& spec, const Vec2& v, double m);

// ---- Pointwise evaluation (nonlocal family; m below is (rho*m)(x)) ----
double ham_value(const NonlocalHamiltonianSpec& spec, const Vec2& p, double m_conv);
Vec2 ham_grad_p(const NonlocalHamiltonianSpec& spec, const Vec2& p, double m_conv);

// ---- Upwind numerical Hamiltonian ----
// One-sided differences in slot order q = (D+x u, D-x u, D+y u, D-y u).
// Godunov selector: P = max(q2,0)^2 + min(q1,0)^2 + max(q4,0)^2 + min(q3,0)^2.
double godunov_selector(const std::array<double, 4>& q);
double numerical_hamiltonian(const LocalHamiltonianSpec& spec,
                             const std::array<double, 4>& q, double m);
double numerical_hamiltonian(const NonlocalHamiltonianSpec& spec,
                             const std::array<double, 4>& q, double m_conv);

// ---- Nonlocal coupling ----
// Periodic convolution (k*f)(x_a) = h^2 * sum_b k(x_a - x_b) f(x_b), direct sum.
ScalarField convolve(const ScalarField& kernel, const ScalarField& f);
// G = alpha * rho_tilde * ( m * gradsq / (offset + rho*m)^(alpha+1) ), where
// gradsq holds |q|^beta per cell.
ScalarField nonlocal_G(const NonlocalHamiltonianSpec& spec, const ScalarField& m,
                       const ScalarField& gradsq);
// True iff ||rho||_1 < (beta-1)/(alpha*m0_max), strictly.
bool kernel_condition(const NonlocalHamiltonianSpec& spec, double m0_max);

}  // namespace mfc

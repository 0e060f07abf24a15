#include "core/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace mfc {

namespace {

void require_nonneg_m(double m, const char* who) {
    if (m < 0.0 || !std::isfinite(m))
        throw InvalidArgument(std::string(who) + ": density must be finite and >= 0");
}

// phi(r) = -cH r^beta / denom + r*|v|, the radial profile of H(q,m) - q.v
// after restricting q to the optimal direction -v/|v|.
double radial_profile(double r, double cH, double beta, double denom, double vnorm) {
    return -cH * std::pow(r, beta) / denom + r * vnorm;
}

}  // namespace

void LocalHamiltonianSpec::validate() const {
    if (!(cH > 0.0))
        throw InvalidArgument("hamiltonian cH must be positive");
    if (!(beta > 1.0 && beta <= 2.0))
        throw InvalidArgument("hamiltonian beta must lie in (1, 2]");
    if (!(offset > 0.0))
        throw InvalidArgument("hamiltonian offset must be positive");
    if (!(alpha >= 0.0))
        throw InvalidArgument("hamiltonian alpha must be >= 0");
}

NonlocalHamiltonianSpec NonlocalHamiltonianSpec::make(double alpha, double beta,
                                                      double offset, ScalarField kernel) {
    if (kernel.grid == nullptr)
        throw InvalidArgument("nonlocal kernel needs a grid");
    const Grid2D& g = *kernel.grid;
    if (g.topology() != Topology::Periodic)
        throw InvalidArgument("nonlocal Hamiltonian is defined on periodic grids only");
    NonlocalHamiltonianSpec spec;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.offset = offset;
    spec.kernel_flipped = ScalarField(g);
    double sum = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const double v = kernel[g.index(i, j)];
            if (v < 0.0 || !std::isfinite(v))
                throw InvalidArgument("nonlocal kernel must be finite and >= 0");
            sum += v;
            const int fi = (g.nx() - i) % g.nx();
            const int fj = (g.ny() - j) % g.ny();
            spec.kernel_flipped[g.index(fi, fj)] = v;
        }
    }
    spec.kernel_l1 = g.h() * g.h() * sum;
    spec.kernel = std::move(kernel);
    spec.validate();
    return spec;
}

void NonlocalHamiltonianSpec::validate() const {
    if (!(beta > 1.0 && beta <= 2.0))
        throw InvalidArgument("hamiltonian beta must lie in (1, 2]");
    if (!(offset > 0.0))
        throw InvalidArgument("hamiltonian offset must be positive");
    if (!(alpha > 0.0))
        throw InvalidArgument("nonlocal hamiltonian alpha must be positive");
    if (kernel.grid == nullptr)
        throw InvalidArgument("nonlocal kernel missing");
}

double ham_value(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_nonneg_m(m, "ham_value");
    const double pnorm_b = std::pow(norm_sq(p), 0.5 * spec.beta);
    return -spec.cH * pnorm_b / std::pow(spec.offset + m, spec.alpha) + spec.F.value(m);
}

Vec2 ham_grad_p(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_nonneg_m(m, "ham_grad_p");
    const double p2 = norm_sq(p);
    if (p2 == 0.0)
        return {0.0, 0.0};  // odd in p; limit taken as 0 for beta < 2 as well
    const double scale =
        -spec.cH * spec.beta * std::pow(p2, 0.5 * spec.beta - 1.0) /
        std::pow(spec.offset + m, spec.alpha);
    return {scale * p.x, scale * p.y};
}

double ham_deriv_m(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_nonneg_m(m, "ham_deriv_m");
    return ham_deriv_m_gradpow(spec, std::pow(norm_sq(p), 0.5 * spec.beta), m);
}

double ham_deriv_m_gradpow(const LocalHamiltonianSpec& spec, double p_pow_beta, double m) {
    require_nonneg_m(m, "ham_deriv_m_gradpow");
    return spec.alpha * spec.cH * p_pow_beta / std::pow(spec.offset + m, spec.alpha + 1.0) +
           spec.F.d1(m);
}

double mftc_effective_hamiltonian(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    return ham_value(spec, p, m) + m * ham_deriv_m(spec, p, m);
}

std::array<double, 3> ham_hess_pp(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_nonneg_m(m, "ham_hess_pp");
    const double denom = std::pow(spec.offset + m, spec.alpha);
    if (spec.beta == 2.0) {
        const double diag = -2.0 * spec.cH / denom;
        return {diag, 0.0, diag};
    }
    const double p2 = norm_sq(p);
    if (p2 == 0.0)
        throw InvalidArgument("ham_hess_pp is singular at p = 0 for beta < 2");
    const double s = -spec.cH * spec.beta / denom;
    const double pb2 = std::pow(p2, 0.5 * spec.beta - 1.0);
    const double pb4 = std::pow(p2, 0.5 * spec.beta - 2.0);
    return {s * (pb2 + (spec.beta - 2.0) * pb4 * p.x * p.x),
            s * (spec.beta - 2.0) * pb4 * p.x * p.y,
            s * (pb2 + (spec.beta - 2.0) * pb4 * p.y * p.y)};
}

double legendre_cost(const LocalHamiltonianSpec& spec, const Vec2& v, double m) {
    require_nonneg_m(m, "legendre_cost");
    spec.validate();
    if (spec.beta == 2.0) {
        return norm_sq(v) * std::pow(spec.offset + m, spec.alpha) / (4.0 * spec.cH) +
               spec.F.value(m);
    }
    return legendre_cost_numeric(spec, v, m);
}

double legendre_cost_numeric(const LocalHamiltonianSpec& spec, const Vec2& v, double m) {
    require_nonneg_m(m, "legendre_cost_numeric");
    spec.validate();
    const double vnorm = std::sqrt(norm_sq(v));
    if (vnorm == 0.0)
        return spec.F.value(m);
    const double denom = std::pow(spec.offset + m, spec.alpha);
    // Stationary radius of the concave profile; bracket it generously.
    const double rstar =
        std::pow(denom * vnorm / (spec.cH * spec.beta), 1.0 / (spec.beta - 1.0));
    double lo = 0.0;
    double hi = std::max(2.0 * rstar, 1.0);
    // Golden-section maximization; the profile is strictly concave for beta > 1.
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = radial_profile(x1, spec.cH, spec.beta, denom, vnorm);
    double f2 = radial_profile(x2, spec.cH, spec.beta, denom, vnorm);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = radial_profile(x2, spec.cH, spec.beta, denom, vnorm);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = radial_profile(x1, spec.cH, spec.beta, denom, vnorm);
        }
    }
    return std::max(f1, f2) + spec.F.value(m);
}

double ham_value(const NonlocalHamiltonianSpec& spec, const Vec2& p, double m_conv) {
    require_nonneg_m(m_conv, "ham_value");
    const double pnorm_b = std::pow(norm_sq(p), 0.5 * spec.beta);
    return -pnorm_b / std::pow(spec.offset + m_conv, spec.alpha);
}

Vec2 ham_grad_p(const NonlocalHamiltonianSpec& spec, const Vec2& p, double m_conv) {
    require_nonneg_m(m_conv, "ham_grad_p");
    const double p2 = norm_sq(p);
    if (p2 == 0.0)
        return {0.0, 0.0};
    const double scale = -spec.beta * std::pow(p2, 0.5 * spec.beta - 1.0) /
                         std::pow(spec.offset + m_conv, spec.alpha);
    return {scale * p.x, scale * p.y};
}

double godunov_selector(const std::array<double, 4>& q) {
    const double a = std::min(q[0], 0.0);  // forward x enters when decreasing
    const double b = std::max(q[1], 0.0);  // backward x enters when increasing
    const double c = std::min(q[2], 0.0);
    const double d = std::max(q[3], 0.0);
    return a * a + b * b + c * c + d * d;
}

double numerical_hamiltonian(const LocalHamiltonianSpec& spec,
                             const std::array<double, 4>& q, double m) {
    require_nonneg_m(m, "numerical_hamiltonian");
    const double P = godunov_selector(q);
    const double Pb = spec.beta == 2.0 ? P : std::pow(P, 0.5 * spec.beta);
    return -spec.cH * Pb / std::pow(spec.offset + m, spec.alpha) + spec.F.value(m);
}

double numerical_hamiltonian(const NonlocalHamiltonianSpec& spec,
                             const std::array<double, 4>& q, double m_conv) {
    require_nonneg_m(m_conv, "numerical_hamiltonian");
    const double P = godunov_selector(q);
    const double Pb = spec.beta == 2.0 ? P : std::pow(P, 0.5 * spec.beta);
    return -Pb / std::pow(spec.offset + m_conv, spec.alpha);
}

ScalarField convolve(const ScalarField& kernel, const ScalarField& f) {
    require_same_grid(kernel, f, "convolve");
    const Grid2D& g = *kernel.grid;
    if (g.topology() != Topology::Periodic)
        throw InvalidArgument("convolve requires a periodic grid");
    const int nx = g.nx();
    const int ny = g.ny();
    const double w = g.h() * g.h();
    ScalarField out(g);
    for (int aj = 0; aj < ny; ++aj) {
        for (int ai = 0; ai < nx; ++ai) {
            double acc = 0.0;
            for (int bj = 0; bj < ny; ++bj) {
                const int dj = (aj - bj + ny) % ny;
                for (int bi = 0; bi < nx; ++bi) {
                    const int di = (ai - bi + nx) % nx;
                    acc += kernel[g.index(di, dj)] * f[g.index(bi, bj)];
                }
            }
            out[g.index(ai, aj)] = w * acc;
        }
    }
    return out;
}

ScalarField nonlocal_G(const NonlocalHamiltonianSpec& spec, const ScalarField& m,
                       const ScalarField& gradsq) {
    spec.validate();
    require_same_grid(m, gradsq, "nonlocal_G");
    if (m.grid != spec.kernel.grid)
        throw InvalidArgument("nonlocal_G: fields and kernel live on different grids");
    const Grid2D& g = *m.grid;
    const ScalarField conv = convolve(spec.kernel, m);
    ScalarField integrand(g);
    for (int idx = 0; idx < g.num_cells(); ++idx) {
        require_nonneg_m(m[idx], "nonlocal_G");
        integrand[idx] = spec.alpha * m[idx] * gradsq[idx] /
                         std::pow(spec.offset + conv[idx], spec.alpha + 1.0);
    }
    return convolve(spec.kernel_flipped, integrand);
}

bool kernel_condition(const NonlocalHamiltonianSpec& spec, double m0_max) {
    if (!(m0_max > 0.0))
        throw InvalidArgument("kernel_condition needs m0_max > 0");
    spec.validate();
    return spec.kernel_l1 < (spec.beta - 1.0) / (spec.alpha * m0_max);
}

}  // namespace mfc

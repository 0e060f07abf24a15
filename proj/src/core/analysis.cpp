#include "core/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace mfc {

namespace {

void require_positive_m(double m, const char* who) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw InvalidArgument(std::string(who) + ": m must be > 0");
}

double clamped(double m) { return m < 0.0 ? 0.0 : m; }

// Centered gradient with the same ghost closure as the upwind differences.
Vec2 centered_grad(const Grid2D& grid, const ScalarField& u, double exit_ghost, int idx) {
    std::array<double, 4> side{};
    for (Dir d : kAllDirs) {
        double v;
        switch (grid.face_kind(idx, d)) {
            case FaceKind::Interior:
            case FaceKind::PeriodicWrap:
                v = u[grid.neighbor(idx, d)];
                break;
            case FaceKind::ExitGhost:
                v = exit_ghost;
                break;
            default:
                v = u[idx];
                break;
        }
        side[static_cast<size_t>(static_cast<int>(d))] = v;
    }
    const double inv_2h = 0.5 / grid.h();
    return {(side[0] - side[1]) * inv_2h, (side[2] - side[3]) * inv_2h};
}

}  // namespace

double CostSpec::value(const Vec2& v, double m) const { return legendre_cost(ham, v, m); }

double CostSpec::mass_curvature(const Vec2& v, double m) const {
    require_positive_m(m, "CostSpec::mass_curvature");
    if (ham.beta == 2.0) {
        const double cm = ham.offset + m;
        return norm_sq(v) * ham.alpha * std::pow(cm, ham.alpha - 2.0) *
                   (2.0 * ham.offset + m * (1.0 + ham.alpha)) / (4.0 * ham.cH) +
               2.0 * ham.F.d1(m) + m * ham.F.d2(m);
    }
    const double hm = std::min(1e-4 * std::max(1.0, m), 0.5 * m);
    const auto g = [&](double mm) { return mm * legendre_cost_numeric(ham, v, mm); };
    return (g(m + hm) - 2.0 * g(m) + g(m - hm)) / (hm * hm);
}

Vec2 CostSpec::mixed_deriv(const Vec2& v, double m) const {
    require_positive_m(m, "CostSpec::mixed_deriv");
    if (ham.beta == 2.0) {
        const double s = ham.alpha * std::pow(ham.offset + m, ham.alpha - 1.0) /
                         (2.0 * ham.cH);
        return {s * v.x, s * v.y};
    }
    const double hm = std::min(1e-4 * std::max(1.0, m), 0.5 * m);
    const double hv = 1e-4 * std::max(1.0, std::sqrt(norm_sq(v)));
    const auto grad_v = [&](double mm) -> Vec2 {
        const double gx = (legendre_cost_numeric(ham, {v.x + hv, v.y}, mm) -
                           legendre_cost_numeric(ham, {v.x - hv, v.y}, mm)) /
                          (2.0 * hv);
        const double gy = (legendre_cost_numeric(ham, {v.x, v.y + hv}, mm) -
                           legendre_cost_numeric(ham, {v.x, v.y - hv}, mm)) /
                          (2.0 * hv);
        return {gx, gy};
    };
    const Vec2 hi = grad_v(m + hm);
    const Vec2 lo = grad_v(m - hm);
    return {(hi.x - lo.x) / (2.0 * hm), (hi.y - lo.y) / (2.0 * hm)};
}

std::array<double, 3> CostSpec::vel_hessian(const Vec2& v, double m) const {
    require_positive_m(m, "CostSpec::vel_hessian");
    if (ham.beta == 2.0) {
        const double d = std::pow(ham.offset + m, ham.alpha) / (2.0 * ham.cH);
        return {d, 0.0, d};
    }
    const double hv = 1e-4 * std::max(1.0, std::sqrt(norm_sq(v)));
    const auto f = [&](double vx, double vy) {
        return legendre_cost_numeric(ham, {vx, vy}, m);
    };
    const double f0 = f(v.x, v.y);
    const double fxx = (f(v.x + hv, v.y) - 2.0 * f0 + f(v.x - hv, v.y)) / (hv * hv);
    const double fyy = (f(v.x, v.y + hv) - 2.0 * f0 + f(v.x, v.y - hv)) / (hv * hv);
    const double fxy = (f(v.x + hv, v.y + hv) - f(v.x + hv, v.y - hv) -
                        f(v.x - hv, v.y + hv) + f(v.x - hv, v.y - hv)) /
                       (4.0 * hv * hv);
    return {fxx, fxy, fyy};
}

SymMatrix theta_matrix(const CostSpec& cost, const Vec2& v, double m) {
    require_positive_m(m, "theta_matrix");
    SymMatrix t = SymMatrix::zero(3);
    const Vec2 mixed = cost.mixed_deriv(v, m);
    const auto hess = cost.vel_hessian(v, m);
    t.at(0, 0) = cost.mass_curvature(v, m);
    t.at(0, 1) = t.at(1, 0) = m * mixed.x;
    t.at(0, 2) = t.at(2, 0) = m * mixed.y;
    t.at(1, 1) = m * hess[0];
    t.at(1, 2) = t.at(2, 1) = m * hess[1];
    t.at(2, 2) = m * hess[2];
    return t;
}

SymMatrix mfg_condition_matrix(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_positive_m(m, "mfg_condition_matrix");
    SymMatrix t = SymMatrix::zero(3);
    const double pb2 = std::pow(norm_sq(p), 0.5 * spec.beta - 1.0);
    const double mixed_scale = spec.alpha * spec.beta * spec.cH * pb2 /
                               std::pow(spec.offset + m, spec.alpha + 1.0);
    const auto hess = ham_hess_pp(spec, p, m);
    t.at(0, 0) = 2.0 * ham_deriv_m(spec, p, m);
    t.at(0, 1) = t.at(1, 0) = -mixed_scale * p.x;
    t.at(0, 2) = t.at(2, 0) = -mixed_scale * p.y;
    t.at(1, 1) = -2.0 * hess[0];
    t.at(1, 2) = t.at(2, 1) = -2.0 * hess[1];
    t.at(2, 2) = -2.0 * hess[2];
    return t;
}

bool is_positive_definite(const SymMatrix& mat) {
    const int n = mat.n;
    if (n <= 0 || mat.a.size() != static_cast<size_t>(n) * n)
        throw InvalidArgument("is_positive_definite: malformed matrix");
    double maxnorm = 0.0;
    for (double v : mat.a) {
        if (!std::isfinite(v))
            throw InvalidArgument("is_positive_definite: nonfinite entry");
        maxnorm = std::max(maxnorm, std::abs(v));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(mat.at(i, j) - mat.at(j, i)) > 1e-12 * std::max(1.0, maxnorm))
                throw InvalidArgument("is_positive_definite: matrix is not symmetric");
        }
    }
    // LDL^T without pivoting; a pivot at or below the threshold ends it.
    const double threshold = 1e-10 * maxnorm;
    std::vector<double> d(static_cast<size_t>(n), 0.0);
    std::vector<double> L(static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        double pivot = mat.at(k, k);
        for (int j = 0; j < k; ++j)
            pivot -= L[static_cast<size_t>(k * n + j)] * L[static_cast<size_t>(k * n + j)] *
                     d[static_cast<size_t>(j)];
        if (!(pivot > threshold))
            return false;
        d[static_cast<size_t>(k)] = pivot;
        for (int i = k + 1; i < n; ++i) {
            double v = mat.at(i, k);
            for (int j = 0; j < k; ++j)
                v -= L[static_cast<size_t>(i * n + j)] * L[static_cast<size_t>(k * n + j)] *
                     d[static_cast<size_t>(j)];
            L[static_cast<size_t>(i * n + k)] = v / pivot;
        }
    }
    return true;
}

double ham_mass_curvature(const LocalHamiltonianSpec& spec, const Vec2& p, double m) {
    require_positive_m(m, "ham_mass_curvature");
    const double cm = spec.offset + m;
    const double pb = std::pow(norm_sq(p), 0.5 * spec.beta);
    return spec.cH * pb * spec.alpha * std::pow(cm, -spec.alpha - 2.0) *
               (2.0 * spec.offset + m * (1.0 - spec.alpha)) +
           2.0 * spec.F.d1(m) + m * spec.F.d2(m);
}

double quadratic_form_Q(const LocalHamiltonianSpec& spec, const ScalarField& m,
                        const VectorField& p, const ScalarField& mu,
                        const VectorField& pi) {
    if (m.grid == nullptr || m.grid != p.grid || m.grid != mu.grid || m.grid != pi.grid)
        throw InvalidArgument("quadratic_form_Q: fields live on different grids");
    const Grid2D& grid = *m.grid;
    double acc = 0.0;
    for (int idx : grid.free_cells()) {
        require_positive_m(m[idx], "quadratic_form_Q");
        const auto hess = ham_hess_pp(spec, p[idx], m[idx]);
        const Vec2& w = pi[idx];
        const double quad =
            hess[0] * w.x * w.x + 2.0 * hess[1] * w.x * w.y + hess[2] * w.y * w.y;
        acc += ham_mass_curvature(spec, p[idx], m[idx]) * mu[idx] * mu[idx] -
               m[idx] * quad;
    }
    return acc * grid.h() * grid.h();
}

DiagnosticsReport run_diagnostics(const Solution& sol, const Grid2D& grid, double dt) {
    DiagnosticsReport report;
    const double w = grid.h() * grid.h();
    for (size_t n = 0; n < sol.m_traj.size(); ++n) {
        const ScalarField& m = sol.m_traj[n];
        if (m.grid != &grid)
            throw InvalidArgument("run_diagnostics: solution lives on a different grid");
        double mass = 0.0;
        double ent = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int idx : grid.free_cells()) {
            const double v = m[idx];
            mass += v;
            if (v > 0.0)
                ent += v * std::log(v);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        report.times.push_back(static_cast<double>(n) * dt);
        report.mass.push_back(w * mass);
        report.min_m.push_back(lo);
        report.max_m.push_back(hi);
        report.entropy.push_back(w * ent);
    }
    return report;
}

double energy_gap(const Solution& a, const Solution& b, const Grid2D& grid,
                  const HamiltonianSpec& spec, double dt, double exit_cost) {
    if (a.m_traj.size() != b.m_traj.size() || a.u_traj.size() != a.m_traj.size() ||
        b.u_traj.size() != b.m_traj.size())
        throw InvalidArgument("energy_gap: trajectory shapes differ");
    const size_t slices = a.m_traj.size();
    const double w = grid.h() * grid.h();
    const auto* local = std::get_if<LocalHamiltonianSpec>(&spec);
    const auto* nonlocal = std::get_if<NonlocalHamiltonianSpec>(&spec);

    const auto pairing = [&](size_t n) {
        double acc = 0.0;
        for (int idx : grid.free_cells())
            acc += (a.u_traj[n][idx] - b.u_traj[n][idx]) *
                   (a.m_traj[n][idx] - b.m_traj[n][idx]);
        return w * acc;
    };

    double integral = 0.0;
    for (size_t n = 0; n < slices; ++n) {
        const ScalarField& m1 = a.m_traj[n];
        const ScalarField& m2 = b.m_traj[n];
        ScalarField conv1(grid);
        ScalarField conv2(grid);
        ScalarField g1(grid);
        ScalarField g2(grid);
        if (nonlocal != nullptr) {
            ScalarField c1(grid);
            ScalarField c2(grid);
            ScalarField gs1(grid);
            ScalarField gs2(grid);
            for (int idx = 0; idx < grid.num_cells(); ++idx) {
                c1[idx] = clamped(m1[idx]);
                c2[idx] = clamped(m2[idx]);
            }
            for (int idx : grid.free_cells()) {
                gs1[idx] = std::pow(norm_sq(centered_grad(grid, a.u_traj[n], exit_cost, idx)),
                                    0.5 * nonlocal->beta);
                gs2[idx] = std::pow(norm_sq(centered_grad(grid, b.u_traj[n], exit_cost, idx)),
                                    0.5 * nonlocal->beta);
            }
            conv1 = convolve(nonlocal->kernel, c1);
            conv2 = convolve(nonlocal->kernel, c2);
            g1 = nonlocal_G(*nonlocal, c1, gs1);
            g2 = nonlocal_G(*nonlocal, c2, gs2);
        }
        double e = 0.0;
        for (int idx : grid.free_cells()) {
            const Vec2 p1 = centered_grad(grid, a.u_traj[n], exit_cost, idx);
            const Vec2 p2 = centered_grad(grid, b.u_traj[n], exit_cost, idx);
            const double d1 = clamped(m1[idx]);
            const double d2 = clamped(m2[idx]);
            double h1;
            double h2;
            Vec2 gp1;
            Vec2 gp2;
            if (local != nullptr) {
                h1 = ham_value(*local, p1, d1);
                h2 = ham_value(*local, p2, d2);
                gp1 = ham_grad_p(*local, p1, d1);
                gp2 = ham_grad_p(*local, p2, d2);
            } else {
                h1 = ham_value(*nonlocal, p1, conv1[idx]);
                h2 = ham_value(*nonlocal, p2, conv2[idx]);
                gp1 = ham_grad_p(*nonlocal, p1, conv1[idx]);
                gp2 = ham_grad_p(*nonlocal, p2, conv2[idx]);
                e += (d1 - d2) * (g1[idx] - g2[idx]);
            }
            const Vec2 dp = {p1.x - p2.x, p1.y - p2.y};
            const Vec2 flow = {d1 * gp1.x - d2 * gp2.x, d1 * gp1.y - d2 * gp2.y};
            e += (h1 - h2) * (d1 - d2) - dot(flow, dp);
        }
        const double weight = (n == 0 || n + 1 == slices) ? 0.5 : 1.0;
        integral += weight * dt * w * e;
    }
    return pairing(slices - 1) - pairing(0) + integral;
}

}  // namespace mfc

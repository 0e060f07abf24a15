#include "core/fp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "core/error.hpp"
#include "core/hjb.hpp"

namespace mfc {

namespace {

constexpr double kDensitySlack = -1e-12;

double clamped(double m) { return m < 0.0 ? 0.0 : m; }

}  // namespace

TransportCoefficients transport_coefficients(const HamiltonianSpec& spec,
                                             const ScalarField& u, const ScalarField& m,
                                             const Grid2D& grid, double exit_cost) {
    if (u.grid != &grid || m.grid != &grid)
        throw InvalidArgument("transport_coefficients: fields live on a different grid");
    const auto q = upwind_differences(grid, u, exit_cost);

    double cH = 1.0;
    double alpha = 0.0;
    double beta = 2.0;
    double offset = 1.0;
    ScalarField congestion(grid);
    if (const auto* local = std::get_if<LocalHamiltonianSpec>(&spec)) {
        cH = local->cH;
        alpha = local->alpha;
        beta = local->beta;
        offset = local->offset;
        for (int idx : grid.free_cells())
            congestion[idx] = clamped(m[idx]);
    } else {
        const auto& nonlocal = std::get<NonlocalHamiltonianSpec>(spec);
        alpha = nonlocal.alpha;
        beta = nonlocal.beta;
        offset = nonlocal.offset;
        ScalarField m_clamped(grid);
        for (int idx = 0; idx < grid.num_cells(); ++idx)
            m_clamped[idx] = clamped(m[idx]);
        congestion = convolve(nonlocal.kernel, m_clamped);
    }

    TransportCoefficients out;
    out.grid = &grid;
    for (auto& side : out.c)
        side.assign(static_cast<size_t>(grid.num_cells()), 0.0);
    for (int idx : grid.free_cells()) {
        if (!(m[idx] >= kDensitySlack) || !std::isfinite(m[idx]))
            throw InvalidArgument("transport_coefficients: density must be >= 0 nodewise");
        const auto& qi = q[static_cast<size_t>(idx)];
        const double scale = -cH / std::pow(offset + congestion[idx], alpha);
        // dP/dq per slot; zero at kinks (one-sided difference exactly 0).
        const std::array<double, 4> dP = {2.0 * std::min(qi[0], 0.0),
                                          2.0 * std::max(qi[1], 0.0),
                                          2.0 * std::min(qi[2], 0.0),
                                          2.0 * std::max(qi[3], 0.0)};
        double chain = scale;
        if (beta != 2.0) {
            const double P = godunov_selector(qi);
            chain = P == 0.0 ? 0.0 : scale * 0.5 * beta * std::pow(P, 0.5 * beta - 1.0);
        }
        for (int slot = 0; slot < 4; ++slot)
            out.c[static_cast<size_t>(slot)][static_cast<size_t>(idx)] =
                chain * dP[static_cast<size_t>(slot)];
    }
    return out;
}

ScalarField transport_apply(const TransportCoefficients& coeffs, const ScalarField& w) {
    const Grid2D& grid = *coeffs.grid;
    if (w.grid != &grid)
        throw InvalidArgument("transport_apply: field lives on a different grid");
    const auto dw = upwind_differences(grid, w, 0.0);
    ScalarField out(grid);
    for (int idx : grid.free_cells()) {
        double acc = 0.0;
        for (int slot = 0; slot < 4; ++slot)
            acc += coeffs.c[static_cast<size_t>(slot)][static_cast<size_t>(idx)] *
                   dw[static_cast<size_t>(idx)][static_cast<size_t>(slot)];
        out[idx] = acc;
    }
    return out;
}

ScalarField transport_apply_transpose(const TransportCoefficients& coeffs,
                                      const ScalarField& m) {
    const Grid2D& grid = *coeffs.grid;
    if (m.grid != &grid)
        throw InvalidArgument("transport_apply_transpose: field lives on a different grid");
    const double inv_h = 1.0 / grid.h();
    ScalarField out(grid);
    // Scatter the adjoint of each difference term: a forward-slot term
    // c*(w_nb - w_i)/h sends mass m_i*c/h from i to its neighbor, a
    // backward-slot term c*(w_i - w_nb)/h pulls the other way. Exit ghosts
    // hold w = 0, so their share simply leaves the system.
    for (int idx : grid.free_cells()) {
        const double mi = m[idx];
        for (Dir d : kAllDirs) {
            const int slot = static_cast<int>(d);
            const double flux =
                mi * coeffs.c[static_cast<size_t>(slot)][static_cast<size_t>(idx)] * inv_h;
            if (flux == 0.0)
                continue;
            const FaceKind kind = grid.face_kind(idx, d);
            if (kind == FaceKind::WallMirror)
                continue;  // coefficient is zero here by construction anyway
            const bool forward = d == Dir::XPlus || d == Dir::YPlus;
            const int nb =
                kind == FaceKind::ExitGhost ? -1 : grid.neighbor(idx, d);
            if (forward) {
                out[idx] -= flux;
                if (nb >= 0)
                    out[nb] += flux;
            } else {
                out[idx] += flux;
                if (nb >= 0)
                    out[nb] -= flux;
            }
        }
    }
    return out;
}

double transport_cfl_limit(const TransportCoefficients& coeffs) {
    const Grid2D& grid = *coeffs.grid;
    double worst = 0.0;
    for (int idx : grid.free_cells()) {
        double sum = 0.0;
        for (int slot = 0; slot < 4; ++slot)
            sum += std::abs(coeffs.c[static_cast<size_t>(slot)][static_cast<size_t>(idx)]);
        worst = std::max(worst, sum);
    }
    return worst == 0.0 ? std::numeric_limits<double>::infinity() : grid.h() / worst;
}

ScalarField fp_forward_step(const ScalarField& m_prev, const TransportCoefficients& coeffs,
                            double nu, double dt, const Grid2D& grid,
                            const DiffusionSolver& diffusion) {
    if (m_prev.grid != &grid || coeffs.grid != &grid)
        throw InvalidArgument("fp_forward_step: inputs live on a different grid");
    if (&diffusion.grid() != &grid || diffusion.nu() != nu || diffusion.dt() != dt)
        throw InvalidArgument("fp_forward_step: diffusion solver mismatch");
    const double inv_h = 1.0 / grid.h();

    int worst_idx = -1;
    double worst_sum = 0.0;
    for (int idx : grid.free_cells()) {
        if (!(m_prev[idx] >= kDensitySlack) || !std::isfinite(m_prev[idx]))
            throw InvalidArgument("fp_forward_step: density must be >= 0 nodewise");
        double sum = 0.0;
        for (int slot = 0; slot < 4; ++slot)
            sum += std::abs(coeffs.c[static_cast<size_t>(slot)][static_cast<size_t>(idx)]);
        if (sum > worst_sum) {
            worst_sum = sum;
            worst_idx = idx;
        }
    }
    if (worst_idx >= 0 && dt * worst_sum * inv_h > 1.0) {
        std::ostringstream os;
        os << "transport CFL violated at cell (" << grid.col(worst_idx) << ","
           << grid.row(worst_idx) << "): dt*sum|c|/h = " << dt * worst_sum * inv_h
           << " > 1; admissible dt <= " << grid.h() / worst_sum;
        throw CflError(os.str());
    }

    const ScalarField transported = transport_apply_transpose(coeffs, m_prev);
    ScalarField rhs(grid);
    for (int idx : grid.free_cells())
        rhs[idx] = m_prev[idx] + dt * transported[idx];

    ScalarField m = diffusion.solve(rhs, 0.0);
    for (int idx : grid.free_cells()) {
        if (m[idx] < kDensitySlack) {
            std::ostringstream os;
            os << "fp_forward_step produced negative density " << m[idx] << " at cell ("
               << grid.col(idx) << "," << grid.row(idx) << ")";
            throw NumericError(os.str());
        }
    }
    return m;
}

}  // namespace mfc

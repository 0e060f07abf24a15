#include "core/hjb.hpp"

#include <cmath>
#include <utility>

#include "core/error.hpp"

namespace mfc {

namespace {

// Densities arrive from the forward step with roundoff-scale negatives; treat
// anything below this as a genuine precondition violation.
constexpr double kDensitySlack = -1e-12;

double clamped(double m) { return m < 0.0 ? 0.0 : m; }

void require_density(const Grid2D& grid, const ScalarField& m, const char* who) {
    for (int idx : grid.free_cells()) {
        if (!(m[idx] >= kDensitySlack) || !std::isfinite(m[idx]))
            throw InvalidArgument(std::string(who) + ": density must be >= 0 nodewise");
    }
}

}  // namespace

std::vector<std::array<double, 4>> upwind_differences(const Grid2D& grid,
                                                      const ScalarField& u,
                                                      double exit_ghost) {
    if (u.grid != &grid)
        throw InvalidArgument("upwind_differences: field lives on a different grid");
    const double inv_h = 1.0 / grid.h();
    std::vector<std::array<double, 4>> q(static_cast<size_t>(grid.num_cells()),
                                         {0.0, 0.0, 0.0, 0.0});
    for (int idx : grid.free_cells()) {
        const double uc = u[idx];
        for (Dir d : kAllDirs) {
            const int slot = static_cast<int>(d);
            double ghost;
            switch (grid.face_kind(idx, d)) {
                case FaceKind::Interior:
                case FaceKind::PeriodicWrap:
                    ghost = u[grid.neighbor(idx, d)];
                    break;
                case FaceKind::WallMirror:
                    ghost = uc;
                    break;
                case FaceKind::ExitGhost:
                    ghost = exit_ghost;
                    break;
                default:
                    ghost = uc;
                    break;
            }
            // Forward slots (+x, +y) difference outward, backward slots inward.
            const bool forward = d == Dir::XPlus || d == Dir::YPlus;
            q[static_cast<size_t>(idx)][static_cast<size_t>(slot)] =
                forward ? (ghost - uc) * inv_h : (uc - ghost) * inv_h;
        }
    }
    return q;
}

TerminalSpec TerminalSpec::independent(ScalarField u_T) {
    TerminalSpec spec;
    spec.kind = Kind::Independent;
    spec.u_T = std::move(u_T);
    return spec;
}

TerminalSpec TerminalSpec::local(std::function<double(double, double, double)> h_tilde,
                                 std::function<double(double, double, double)> dh_dm) {
    TerminalSpec spec;
    spec.kind = Kind::Local;
    spec.h_tilde = std::move(h_tilde);
    spec.dh_dm = std::move(dh_dm);
    return spec;
}

ScalarField terminal_condition(const TerminalSpec& h_spec, const ScalarField& m_T,
                               Mode mode) {
    if (m_T.grid == nullptr)
        throw InvalidArgument("terminal_condition: density field needs a grid");
    const Grid2D& grid = *m_T.grid;
    require_density(grid, m_T, "terminal_condition");
    if (h_spec.kind == TerminalSpec::Kind::Independent) {
        if (h_spec.u_T.grid != m_T.grid)
            throw InvalidArgument("terminal_condition: u_T lives on a different grid");
        return h_spec.u_T;
    }
    ScalarField u(grid);
    for (int idx = 0; idx < grid.num_cells(); ++idx) {
        const double x = grid.cx(grid.col(idx));
        const double y = grid.cy(grid.row(idx));
        const double m = clamped(m_T[idx]);
        double val = h_spec.h_tilde(x, y, m);
        if (mode == Mode::MFTC)
            val += m * h_spec.dh_dm(x, y, m);
        u[idx] = val;
    }
    return u;
}

ScalarField hjb_backward_step(const HjbStepInput& input, const DiffusionSolver& diffusion) {
    if (input.grid == nullptr || input.u_next == nullptr || input.m_now == nullptr ||
        input.spec == nullptr)
        throw InvalidArgument("hjb_backward_step: missing input field");
    const Grid2D& grid = *input.grid;
    if (&diffusion.grid() != &grid || diffusion.nu() != input.nu ||
        diffusion.dt() != input.dt)
        throw InvalidArgument("hjb_backward_step: diffusion solver mismatch");
    if (!(input.dt > 0.0) || !(input.nu >= 0.0))
        throw InvalidArgument("hjb_backward_step: need dt > 0 and nu >= 0");
    if (input.u_next->grid != &grid || input.m_now->grid != &grid)
        throw InvalidArgument("hjb_backward_step: fields live on a different grid");
    require_density(grid, *input.m_now, "hjb_backward_step");

    const auto q = upwind_differences(grid, *input.u_next, input.exit_cost);
    const ScalarField& m = *input.m_now;

    ScalarField rhs(grid);
    if (const auto* local = std::get_if<LocalHamiltonianSpec>(input.spec)) {
        for (int idx : grid.free_cells()) {
            const double mi = clamped(m[idx]);
            const auto& qi = q[static_cast<size_t>(idx)];
            double source = numerical_hamiltonian(*local, qi, mi);
            if (input.mode == Mode::MFTC) {
                const double P = godunov_selector(qi);
                const double Pb = local->beta == 2.0 ? P : std::pow(P, 0.5 * local->beta);
                source += mi * ham_deriv_m_gradpow(*local, Pb, mi);
            }
            rhs[idx] = source;
        }
    } else {
        const auto& nonlocal = std::get<NonlocalHamiltonianSpec>(*input.spec);
        ScalarField m_clamped(grid);
        for (int idx = 0; idx < grid.num_cells(); ++idx)
            m_clamped[idx] = clamped(m[idx]);
        const ScalarField conv = convolve(nonlocal.kernel, m_clamped);
        ScalarField gradsq(grid);
        for (int idx : grid.free_cells()) {
            const double P = godunov_selector(q[static_cast<size_t>(idx)]);
            gradsq[idx] = nonlocal.beta == 2.0 ? P : std::pow(P, 0.5 * nonlocal.beta);
        }
        for (int idx : grid.free_cells()) {
            rhs[idx] = numerical_hamiltonian(nonlocal, q[static_cast<size_t>(idx)],
                                             conv[idx]);
        }
        if (input.mode == Mode::MFTC) {
            const ScalarField G = nonlocal_G(nonlocal, m_clamped, gradsq);
            for (int idx : grid.free_cells())
                rhs[idx] += G[idx];
        }
    }
    if (input.extra_source != nullptr) {
        if (input.extra_source->grid != &grid)
            throw InvalidArgument("hjb_backward_step: extra source on a different grid");
        for (int idx : grid.free_cells())
            rhs[idx] += (*input.extra_source)[idx];
    }
    for (int idx : grid.free_cells())
        rhs[idx] = (*input.u_next)[idx] + input.dt * rhs[idx];

    return diffusion.solve(rhs, input.exit_cost);
}

}  // namespace mfc

#include "core/coupler.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace mfc {

void SolverConfig::validate() const {
    if (!(nu >= 0.0))
        throw InvalidArgument("solver.nu must be >= 0");
    if (!(T > 0.0))
        throw InvalidArgument("solver.T must be > 0");
    if (Nt < 1)
        throw InvalidArgument("solver.Nt must be >= 1");
    if (!(delta > 0.0 && delta <= 1.0))
        throw InvalidArgument("solver.delta must lie in (0, 1]");
    if (!(tol > 0.0))
        throw InvalidArgument("solver.tol must be > 0");
    if (max_iters < 1)
        throw InvalidArgument("solver.max_iters must be >= 1");
}

double residual(const std::vector<ScalarField>& m_old,
                const std::vector<ScalarField>& m_new) {
    if (m_old.size() != m_new.size())
        throw InvalidArgument("residual: trajectories have different lengths");
    double worst = 0.0;
    for (size_t t = 0; t < m_old.size(); ++t) {
        if (m_old[t].values.size() != m_new[t].values.size())
            throw InvalidArgument("residual: trajectory slices have different shapes");
        for (size_t i = 0; i < m_old[t].values.size(); ++i)
            worst = std::max(worst, std::abs(m_old[t].values[i] - m_new[t].values[i]));
    }
    return worst;
}

namespace {

void backward_sweep(std::vector<ScalarField>& u_traj,
                    const std::vector<ScalarField>& m_traj, const Grid2D& grid,
                    const TerminalSpec& h_spec, const HamiltonianSpec& spec,
                    const SolverConfig& config, const DiffusionSolver& diffusion) {
    const int Nt = config.Nt;
    u_traj[static_cast<size_t>(Nt)] =
        terminal_condition(h_spec, m_traj[static_cast<size_t>(Nt)], config.mode);
    for (int n = Nt - 1; n >= 0; --n) {
        HjbStepInput input;
        input.grid = &grid;
        input.u_next = &u_traj[static_cast<size_t>(n + 1)];
        input.m_now = &m_traj[static_cast<size_t>(n)];
        input.nu = config.nu;
        input.dt = config.dt();
        input.mode = config.mode;
        input.spec = &spec;
        input.exit_cost = config.exit_cost;
        u_traj[static_cast<size_t>(n)] = hjb_backward_step(input, diffusion);
    }
}

}  // namespace

Solution solve(const Grid2D& grid, const ScalarField& m0, const TerminalSpec& h_spec,
               const HamiltonianSpec& spec, const SolverConfig& config) {
    config.validate();
    if (m0.grid != &grid)
        throw InvalidArgument("solve: m0 lives on a different grid");
    for (int idx : grid.free_cells()) {
        if (!(m0[idx] >= 0.0) || !std::isfinite(m0[idx]))
            throw InvalidArgument("solve: m0 must be finite and >= 0");
    }
    if (std::holds_alternative<NonlocalHamiltonianSpec>(spec) &&
        grid.topology() != Topology::Periodic)
        throw InvalidArgument("solve: nonlocal Hamiltonian requires a periodic grid");

    const int Nt = config.Nt;
    const double dt = config.dt();
    const DiffusionSolver diffusion(grid, config.nu, dt);

    Solution sol;
    sol.m_traj.assign(static_cast<size_t>(Nt) + 1, m0);
    sol.u_traj.assign(static_cast<size_t>(Nt) + 1, ScalarField(grid));

    std::vector<ScalarField> m_fwd(static_cast<size_t>(Nt) + 1, m0);
    for (int iter = 1; iter <= config.max_iters; ++iter) {
        backward_sweep(sol.u_traj, sol.m_traj, grid, h_spec, spec, config, diffusion);

        m_fwd[0] = m0;
        for (int n = 0; n < Nt; ++n) {
            const TransportCoefficients coeffs =
                transport_coefficients(spec, sol.u_traj[static_cast<size_t>(n + 1)],
                                       m_fwd[static_cast<size_t>(n)], grid,
                                       config.exit_cost);
            m_fwd[static_cast<size_t>(n + 1)] = fp_forward_step(
                m_fwd[static_cast<size_t>(n)], coeffs, config.nu, dt, grid, diffusion);
        }

        // Damped update; slice 0 is pinned to m0 so the damping arithmetic
        // cannot perturb it by an ulp.
        double res = 0.0;
        for (int n = 1; n <= Nt; ++n) {
            ScalarField& cur = sol.m_traj[static_cast<size_t>(n)];
            const ScalarField& fwd = m_fwd[static_cast<size_t>(n)];
            for (size_t i = 0; i < cur.values.size(); ++i) {
                const double next =
                    (1.0 - config.delta) * cur.values[i] + config.delta * fwd.values[i];
                res = std::max(res, std::abs(next - cur.values[i]));
                cur.values[i] = next;
            }
        }
        sol.residual_history.push_back(res);
        sol.iterations = iter;
        if (res < config.tol) {
            sol.converged = true;
            break;
        }
    }

    // One more backward sweep so the returned u matches the returned m.
    backward_sweep(sol.u_traj, sol.m_traj, grid, h_spec, spec, config, diffusion);
    return sol;
}

}  // namespace mfc

// Damped fixed-point iteration over the coupled backward value / forward
// density system: backward sweep, forward sweep, damp, repeat to tolerance.
#pragma once

#include <vector>

#include "core/fp.hpp"
#include "core/hjb.hpp"

namespace mfc {

struct SolverConfig {
    double nu = 0.012;     // diffusion, m^2/min
    double T = 50.0;       // horizon, minutes
    int Nt = 1;            // time steps
    Mode mode = Mode::MFG;
    double delta = 0.5;    // damping in (0, 1]
    double tol = 1e-5;     // sup-norm residual threshold on m
    int max_iters = 200;
    double exit_cost = 0.0;

    void validate() const;
    double dt() const { return T / Nt; }
};

struct Solution {
    std::vector<ScalarField> u_traj;  // Nt+1 slices, u_traj[Nt] = terminal condition
    std::vector<ScalarField> m_traj;  // Nt+1 slices, m_traj[0] = m0 exactly
    std::vector<double> residual_history;
    bool converged = false;
    int iterations = 0;
};

// Max over time slices of the nodewise sup-norm difference.
double residual(const std::vector<ScalarField>& m_old,
                const std::vector<ScalarField>& m_new);

// Iterates: terminal condition on the current final density, backward sweep,
// forward sweep, then damped density update. Non-convergence within
// max_iters is reported through the flag, not an exception; CFL violations
// and nonfinite fields are hard errors.
Solution solve(const Grid2D& grid, const ScalarField& m0, const TerminalSpec& h_spec,
               const HamiltonianSpec& spec, const SolverConfig& config);

}  // namespace mfc

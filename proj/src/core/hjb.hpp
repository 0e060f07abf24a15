// One backward time step of the value-function equation (implicit diffusion,
// explicit upwind Hamiltonian source) and terminal-condition assembly.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "core/hamiltonian.hpp"
#include "core/linsolve.hpp"

namespace mfc {

enum class Mode { MFG, MFTC };

// Four one-sided differences per cell in slot order (D+x, D-x, D+y, D-y),
// ghost-closed: WallMirror faces give a zero difference, ExitGhost faces use
// the given ghost value, PeriodicWrap wraps. Non-free cells hold zeros.
std::vector<std::array<double, 4>> upwind_differences(const Grid2D& grid,
                                                      const ScalarField& u,
                                                      double exit_ghost);

// Terminal value assembly: either a fixed field (both modes) or a local cost
// h(x,y,m) whose control-mode variant adds m * dh/dm.
struct TerminalSpec {
    enum class Kind { Independent, Local };
    Kind kind = Kind::Independent;
    ScalarField u_T;
    std::function<double(double, double, double)> h_tilde;
    std::function<double(double, double, double)> dh_dm;

    static TerminalSpec independent(ScalarField u_T);
    static TerminalSpec local(std::function<double(double, double, double)> h_tilde,
                              std::function<double(double, double, double)> dh_dm);
};

ScalarField terminal_condition(const TerminalSpec& h_spec, const ScalarField& m_T,
                               Mode mode);

struct HjbStepInput {
    const Grid2D* grid = nullptr;
    const ScalarField* u_next = nullptr;   // value at t + dt
    const ScalarField* m_now = nullptr;    // density entering the Hamiltonian
    double nu = 0.0;
    double dt = 0.0;
    Mode mode = Mode::MFG;
    const HamiltonianSpec* spec = nullptr;
    double exit_cost = 0.0;
    // Optional extra explicit source (used by manufactured-solution tests).
    const ScalarField* extra_source = nullptr;
};

// Solves (u - u_next)/dt = nu*Lap_h(u) + S for u, with S evaluated explicitly
// at u_next: the upwind Hamiltonian, plus the m*dH/dm term (local control
// mode) or the convolution coupling G (nonlocal control mode). The diffusion
// argument must have been built with the same grid, nu, and dt.
ScalarField hjb_backward_step(const HjbStepInput& input, const DiffusionSolver& diffusion);

}  // namespace mfc

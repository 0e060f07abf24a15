// Forward density step: explicit upwind transport built as the exact
// transpose of the value-equation drift linearization, implicit diffusion.
#pragma once

#include <array>
#include <vector>

#include "core/hamiltonian.hpp"
#include "core/linsolve.hpp"

namespace mfc {

// Per-cell partial derivatives of the upwind Hamiltonian with respect to its
// four one-sided-difference slots (D+x, D-x, D+y, D-y), evaluated at
// (differences of u, m). Monotonicity gives c[0], c[2] >= 0 and
// c[1], c[3] <= 0; WallMirror faces carry 0.
struct TransportCoefficients {
    const Grid2D* grid = nullptr;
    std::array<std::vector<double>, 4> c;
};

TransportCoefficients transport_coefficients(const HamiltonianSpec& spec,
                                             const ScalarField& u, const ScalarField& m,
                                             const Grid2D& grid, double exit_cost = 0.0);

// Drift linearization acting on a test field: (A w)_i = sum_slot c_slot,i *
// (D_slot w)_i with w ghosted to 0 at exit faces. Public for duality checks.
ScalarField transport_apply(const TransportCoefficients& coeffs, const ScalarField& w);

// Exact adjoint of transport_apply under the h^2-weighted inner product;
// this is the divergence form applied to the density.
ScalarField transport_apply_transpose(const TransportCoefficients& coeffs,
                                      const ScalarField& m);

// Largest stable dt for the explicit transport part: h / max_i sum_slot |c|.
double transport_cfl_limit(const TransportCoefficients& coeffs);

// Solves (m - m_prev)/dt = nu*Lap_h(m) + A^T(m_prev): transport explicit
// under the CFL bound dt*sum|c|/h <= 1 per cell (violations throw CflError
// naming the worst cell), diffusion implicit with zero exit ghosts.
ScalarField fp_forward_step(const ScalarField& m_prev, const TransportCoefficients& coeffs,
                            double nu, double dt, const Grid2D& grid,
                            const DiffusionSolver& diffusion);

}  // namespace mfc

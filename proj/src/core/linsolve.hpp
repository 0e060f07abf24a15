// Shared implicit-diffusion solve: factor (I - dt*nu*Lap_h) once per
// (grid, nu, dt) and reuse it for every backward and forward step.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "core/grid.hpp"

namespace mfc {

class DiffusionSolver {
public:
    // Assembles the 5-point Laplacian on free cells with ghost closure per
    // face kind (WallMirror drops the face, ExitGhost couples to the ghost
    // value, PeriodicWrap wraps) and computes its Cholesky factorization.
    DiffusionSolver(const Grid2D& grid, double nu, double dt);

    // Solves (I - dt*nu*Lap_h) x = rhs. ghost_value is the Dirichlet ghost at
    // exit faces (exit cost for u, 0 for m); it lands on the right-hand side.
    // Exit cells of the result carry ghost_value, obstacle cells carry 0.
    ScalarField solve(const ScalarField& rhs, double ghost_value) const;

    const Grid2D& grid() const { return *grid_; }
    double nu() const { return nu_; }
    double dt() const { return dt_; }

private:
    const Grid2D* grid_;
    double nu_;
    double dt_;
    double face_weight_;            // dt*nu/h^2
    std::vector<int> exit_faces_;   // number of exit faces per free cell
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt_;
};

}  // namespace mfc

#include "core/linsolve.hpp"

#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace mfc {

DiffusionSolver::DiffusionSolver(const Grid2D& grid, double nu, double dt)
    : grid_(&grid), nu_(nu), dt_(dt) {
    if (!(dt > 0.0))
        throw InvalidArgument("diffusion solver needs dt > 0");
    if (!(nu >= 0.0))
        throw InvalidArgument("diffusion solver needs nu >= 0");
    face_weight_ = dt * nu / (grid.h() * grid.h());

    const auto& free = grid.free_cells();
    const int n = static_cast<int>(free.size());
    exit_faces_.assign(static_cast<size_t>(n), 0);

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(n) * 5);
    for (int k = 0; k < n; ++k) {
        const int idx = free[static_cast<size_t>(k)];
        double diag = 1.0;
        for (Dir d : kAllDirs) {
            switch (grid.face_kind(idx, d)) {
                case FaceKind::Interior:
                case FaceKind::PeriodicWrap: {
                    const int nb = grid.free_index(grid.neighbor(idx, d));
                    diag += face_weight_;
                    trips.emplace_back(k, nb, -face_weight_);
                    break;
                }
                case FaceKind::WallMirror:
                    break;  // mirror ghost cancels the face exactly
                case FaceKind::ExitGhost:
                    diag += face_weight_;
                    ++exit_faces_[static_cast<size_t>(k)];
                    break;
            }
        }
        trips.emplace_back(k, k, diag);
    }
    Eigen::SparseMatrix<double> mat(n, n);
    mat.setFromTriplets(trips.begin(), trips.end());
    llt_.compute(mat);
    if (llt_.info() != Eigen::Success)
        throw NumericError("diffusion matrix factorization failed");
}

ScalarField DiffusionSolver::solve(const ScalarField& rhs, double ghost_value) const {
    if (rhs.grid != grid_)
        throw InvalidArgument("diffusion solve: rhs lives on a different grid");
    const auto& free = grid_->free_cells();
    const int n = static_cast<int>(free.size());
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) {
        b[k] = rhs[free[static_cast<size_t>(k)]] +
               face_weight_ * ghost_value * exit_faces_[static_cast<size_t>(k)];
    }
    const Eigen::VectorXd x = llt_.solve(b);
    if (llt_.info() != Eigen::Success)
        throw NumericError("diffusion solve failed");

    ScalarField out(*grid_);
    for (int idx = 0; idx < grid_->num_cells(); ++idx) {
        switch (grid_->role(idx)) {
            case CellRole::Free: out[idx] = x[grid_->free_index(idx)]; break;
            case CellRole::Exit: out[idx] = ghost_value; break;
            case CellRole::Obstacle: out[idx] = 0.0; break;
        }
    }
    for (double v : out.values) {
        if (!std::isfinite(v))
            throw NumericError("diffusion solve produced a nonfinite value");
    }
    return out;
}

}  // namespace mfc

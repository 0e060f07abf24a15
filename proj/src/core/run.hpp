// Run orchestration: build the domain, initial density, and Hamiltonian from
// a RunConfig, solve, and emit snapshots, manifest, and audit reports.
#pragma once

#include <memory>
#include <string>

#include "core/config.hpp"
#include "core/grid.hpp"
#include "core/hamiltonian.hpp"

namespace mfc {

Grid2D build_grid(const RunConfig& config);
ScalarField build_initial_density(const RunConfig& config, const Grid2D& grid);
HamiltonianSpec build_hamiltonian(const RunConfig& config, const Grid2D& grid);

struct RunResult {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    std::string output_dir;
};

// Solves the coupled system and writes m_<t>.csv / u_<t>.csv per snapshot
// time plus manifest.txt into the output directory. Non-convergence is
// reported through the flag with outputs still written; hard errors throw
// before anything is written.
RunResult run(const RunConfig& config);

// Samples the uniqueness conditions over the configured (v, m) box (local
// family) or evaluates the kernel smallness condition (nonlocal family).
// Returns a human-readable report ending in machine-readable key=value lines.
std::string check_uniqueness_report(const RunConfig& config);

}  // namespace mfc

// Flat key=value run configuration: parsing with line-accurate errors,
// defaults, and cross-field validation.
#pragma once

#include <string>
#include <vector>

#include "core/coupler.hpp"
#include "core/hamiltonian.hpp"

namespace mfc {

struct RunConfig {
    // Domain: exactly one of the two sources.
    bool torus = false;
    int grid_n = 0;            // torus cells per side
    double grid_side = 1.0;    // torus side length, meters
    std::string geometry_file; // resolved path of the character-grid file
    double geometry_h = 1.0;   // walled-grid spacing, meters

    SolverConfig solver;

    enum class InitKind { Uniform, File, Blocks };
    struct Block {
        int i0 = 0;
        int j0 = 0;
        int i1 = 0;
        int j1 = 0;
    };
    InitKind init_kind = InitKind::Uniform;
    double init_uniform = 0.0;
    std::string init_file;           // resolved path
    std::vector<Block> init_blocks;  // inclusive cell-index rectangles, value 4
    std::string init_raw;            // canonical echo for the manifest

    bool family_local = true;
    double cH = 0.0;
    double alpha = 0.0;
    double beta = 2.0;
    double offset = 1.0;
    RunningCost F = RunningCost::constant(0.0);
    std::string F_raw = "const:0";
    std::string kernel_file;  // resolved path, nonlocal only

    std::string output_dir = "out";
    std::vector<double> snapshot_times;

    // Sampling box for the uniqueness audit.
    double uniq_m_min = 0.1;
    double uniq_m_max = 10.0;
    int uniq_m_count = 24;
    double uniq_v_min = 0.25;
    double uniq_v_max = 8.0;
    int uniq_v_count = 16;
    int uniq_angle_count = 8;
    double uniq_m0_max = 4.0;
};

// Parses the file at path. One key=value pair per line, '#' starts a
// comment, keys are dot-namespaced. Unknown keys, duplicate keys, type
// mismatches, and missing required keys are hard errors naming the line.
// Relative file references are resolved against the config file's directory.
RunConfig load_config(const std::string& path);

// Post-load override for the command-line flags; accepts run.mode and
// output.dir only.
void config_set(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace mfc

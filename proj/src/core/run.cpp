#include "core/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <vector>

#include "core/analysis.hpp"
#include "core/coupler.hpp"
#include "core/error.hpp"
#include "core/io.hpp"

namespace mfc {

namespace {

std::string mode_name(Mode mode) { return mode == Mode::MFG ? "mfg" : "mftc"; }

std::vector<int> output_steps(const RunConfig& config) {
    const double dt = config.solver.dt();
    std::vector<int> steps{0, config.solver.Nt};
    for (double t : config.snapshot_times) {
        int n = static_cast<int>(std::lround(t / dt));
        n = std::clamp(n, 0, config.solver.Nt);
        steps.push_back(n);
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

std::vector<std::pair<std::string, std::string>> manifest_items(
    const RunConfig& config, const Solution& sol, const DiagnosticsReport& diag,
    const std::vector<int>& steps) {
    std::vector<std::pair<std::string, std::string>> items;
    auto put = [&items](const std::string& key, const std::string& value) {
        items.emplace_back(key, value);
    };
    put("run.mode", mode_name(config.solver.mode));
    if (config.torus) {
        put("grid.n", std::to_string(config.grid_n));
        put("grid.side", format_double(config.grid_side));
    } else {
        put("geometry.file", config.geometry_file);
        put("geometry.h", format_double(config.geometry_h));
    }
    put("solver.nu", format_double(config.solver.nu));
    put("solver.T", format_double(config.solver.T));
    put("solver.Nt", std::to_string(config.solver.Nt));
    put("solver.delta", format_double(config.solver.delta));
    put("solver.tol", format_double(config.solver.tol));
    put("solver.max_iters", std::to_string(config.solver.max_iters));
    put("solver.exit_cost", format_double(config.solver.exit_cost));
    put("init.density", config.init_raw);
    put("hamiltonian.family", config.family_local ? "local" : "nonlocal");
    if (config.family_local) {
        put("hamiltonian.cH", format_double(config.cH));
        put("hamiltonian.F", config.F_raw);
    }
    put("hamiltonian.alpha", format_double(config.alpha));
    put("hamiltonian.beta", format_double(config.beta));
    put("hamiltonian.offset", format_double(config.offset));
    if (!config.family_local)
        put("hamiltonian.kernel", config.kernel_file);
    put("output.dir", config.output_dir);
    put("output.snapshots", join_doubles(config.snapshot_times));

    put("converged", sol.converged ? "true" : "false");
    put("iterations", std::to_string(sol.iterations));
    put("final_residual", format_double(sol.residual_history.empty()
                                            ? 0.0
                                            : sol.residual_history.back()));
    put("residual_history", join_doubles(sol.residual_history));

    std::vector<double> times, mass, min_m, max_m, entropy;
    for (int n : steps) {
        times.push_back(diag.times[n]);
        mass.push_back(diag.mass[n]);
        min_m.push_back(diag.min_m[n]);
        max_m.push_back(diag.max_m[n]);
        entropy.push_back(diag.entropy[n]);
    }
    put("output_times", join_doubles(times));
    put("mass_series", join_doubles(mass));
    put("min_series", join_doubles(min_m));
    put("max_series", join_doubles(max_m));
    put("entropy_series", join_doubles(entropy));
    return items;
}

std::string snapshot_path(const std::string& dir, const char* prefix, double t) {
    return (std::filesystem::path(dir) /
            (std::string(prefix) + "_" + format_double(t) + ".csv"))
        .string();
}

void sample_axis(std::vector<double>& out, double lo, double hi, int count) {
    out.clear();
    if (count == 1) {
        out.push_back(lo);
        return;
    }
    for (int k = 0; k < count; ++k)
        out.push_back(lo + (hi - lo) * k / (count - 1));
}

}  // namespace

Grid2D build_grid(const RunConfig& config) {
    if (config.torus)
        return Grid2D::periodic(config.grid_n, config.grid_n,
                                config.grid_side / config.grid_n);
    return parse_geometry(read_text_file(config.geometry_file), config.geometry_h);
}

ScalarField build_initial_density(const RunConfig& config, const Grid2D& grid) {
    ScalarField m0(grid);
    switch (config.init_kind) {
        case RunConfig::InitKind::Uniform:
            for (int idx = 0; idx < grid.num_cells(); ++idx)
                if (grid.is_free(idx))
                    m0.values[idx] = config.init_uniform;
            return m0;
        case RunConfig::InitKind::File: {
            ScalarField field = read_field_csv(config.init_file, grid);
            for (int idx = 0; idx < grid.num_cells(); ++idx) {
                const double v = field.values[idx];
                if (v < 0.0)
                    throw InvalidArgument("initial density is negative at cell (" +
                                          std::to_string(grid.col(idx)) + "," +
                                          std::to_string(grid.row(idx)) + ")");
                if (!grid.is_free(idx) && v != 0.0)
                    throw InvalidArgument(
                        "initial density is nonzero on a non-free cell (" +
                        std::to_string(grid.col(idx)) + "," +
                        std::to_string(grid.row(idx)) + ")");
            }
            return field;
        }
        case RunConfig::InitKind::Blocks: {
            std::vector<bool> taken(grid.num_cells(), false);
            for (const RunConfig::Block& b : config.init_blocks) {
                if (b.i0 > b.i1 || b.j0 > b.j1 || b.i0 < 0 || b.j0 < 0 ||
                    b.i1 >= grid.nx() || b.j1 >= grid.ny())
                    throw InvalidArgument("initial block " + std::to_string(b.i0) +
                                          "," + std::to_string(b.j0) + "," +
                                          std::to_string(b.i1) + "," +
                                          std::to_string(b.j1) +
                                          " does not fit the grid");
                for (int j = b.j0; j <= b.j1; ++j) {
                    for (int i = b.i0; i <= b.i1; ++i) {
                        const int idx = grid.index(i, j);
                        if (!grid.is_free(idx))
                            throw InvalidArgument(
                                "initial block covers a non-free cell (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
                        if (taken[idx])
                            throw InvalidArgument("initial blocks overlap at cell (" +
                                                  std::to_string(i) + "," +
                                                  std::to_string(j) + ")");
                        taken[idx] = true;
                        m0.values[idx] = 4.0;
                    }
                }
            }
            return m0;
        }
    }
    throw InvalidArgument("unhandled initial-density kind");
}

HamiltonianSpec build_hamiltonian(const RunConfig& config, const Grid2D& grid) {
    if (config.family_local) {
        LocalHamiltonianSpec spec{config.cH, config.alpha, config.beta, config.offset,
                                  config.F};
        spec.validate();
        return spec;
    }
    ScalarField kernel = read_field_csv(config.kernel_file, grid);
    return NonlocalHamiltonianSpec::make(config.alpha, config.beta, config.offset,
                                         std::move(kernel));
}

RunResult run(const RunConfig& config) {
    const Grid2D grid = build_grid(config);
    const ScalarField m0 = build_initial_density(config, grid);
    const HamiltonianSpec spec = build_hamiltonian(config, grid);
    const TerminalSpec terminal = TerminalSpec::independent(ScalarField(grid));

    const Solution sol = solve(grid, m0, terminal, spec, config.solver);
    const DiagnosticsReport diag = run_diagnostics(sol, grid, config.solver.dt());
    const std::vector<int> steps = output_steps(config);

    std::filesystem::create_directories(config.output_dir);
    const double dt = config.solver.dt();
    for (double t : config.snapshot_times) {
        const int n = std::clamp(static_cast<int>(std::lround(t / dt)), 0,
                                 config.solver.Nt);
        write_snapshot(snapshot_path(config.output_dir, "m", t), sol.m_traj[n]);
        write_snapshot(snapshot_path(config.output_dir, "u", t), sol.u_traj[n]);
    }
    write_key_values(
        (std::filesystem::path(config.output_dir) / "manifest.txt").string(),
        manifest_items(config, sol, diag, steps));

    RunResult result;
    result.converged = sol.converged;
    result.iterations = sol.iterations;
    result.final_residual =
        sol.residual_history.empty() ? 0.0 : sol.residual_history.back();
    result.output_dir = config.output_dir;
    return result;
}

std::string check_uniqueness_report(const RunConfig& config) {
    std::ostringstream os;
    if (!config.family_local) {
        const Grid2D grid = build_grid(config);
        const HamiltonianSpec spec = build_hamiltonian(config, grid);
        const auto& nl = std::get<NonlocalHamiltonianSpec>(spec);
        const double threshold = (nl.beta - 1.0) / (nl.alpha * config.uniq_m0_max);
        const bool ok = kernel_condition(nl, config.uniq_m0_max);
        os << "uniqueness audit, nonlocal family\n";
        os << "kernel L1 norm " << format_double(nl.kernel_l1)
           << ", smallness threshold (beta-1)/(alpha*m0_max) = "
           << format_double(threshold) << " at m0_max = "
           << format_double(config.uniq_m0_max) << "\n";
        os << (ok ? "kernel condition holds: uniqueness regime certified "
                    "for initial densities bounded by m0_max\n"
                  : "kernel condition fails: no uniqueness certificate at "
                    "this m0_max\n");
        os << "kernel_l1=" << format_double(nl.kernel_l1) << "\n";
        os << "kernel_threshold=" << format_double(threshold) << "\n";
        os << "m0_max=" << format_double(config.uniq_m0_max) << "\n";
        os << "kernel_condition=" << (ok ? "true" : "false") << "\n";
        return os.str();
    }

    LocalHamiltonianSpec spec{config.cH, config.alpha, config.beta, config.offset,
                              config.F};
    spec.validate();
    const CostSpec cost{spec};

    std::vector<double> m_samples, r_samples;
    sample_axis(m_samples, config.uniq_m_min, config.uniq_m_max, config.uniq_m_count);
    sample_axis(r_samples, config.uniq_v_min, config.uniq_v_max, config.uniq_v_count);

    long theta_samples = 0, theta_violations = 0;
    long mfg_samples = 0, mfg_violations = 0;
    Vec2 theta_witness{0.0, 0.0};
    double theta_witness_m = 0.0;
    Vec2 mfg_witness{0.0, 0.0};
    double mfg_witness_m = 0.0;
    const double two_pi = 8.0 * std::atan(1.0);
    for (double m : m_samples) {
        for (double r : r_samples) {
            if (r == 0.0)
                continue;
            for (int a = 0; a < config.uniq_angle_count; ++a) {
                const double th = two_pi * a / config.uniq_angle_count;
                const Vec2 v{r * std::cos(th), r * std::sin(th)};
                ++theta_samples;
                if (!is_positive_definite(theta_matrix(cost, v, m))) {
                    if (theta_violations == 0) {
                        theta_witness = v;
                        theta_witness_m = m;
                    }
                    ++theta_violations;
                }
                ++mfg_samples;
                if (!is_positive_definite(mfg_condition_matrix(spec, v, m))) {
                    if (mfg_violations == 0) {
                        mfg_witness = v;
                        mfg_witness_m = m;
                    }
                    ++mfg_violations;
                }
            }
        }
    }

    os << "uniqueness audit, local family\n";
    os << "hamiltonian: cH=" << format_double(spec.cH)
       << " alpha=" << format_double(spec.alpha) << " beta=" << format_double(spec.beta)
       << " offset=" << format_double(spec.offset) << " F=" << config.F_raw << "\n";
    os << "sample box: m in [" << format_double(config.uniq_m_min) << ", "
       << format_double(config.uniq_m_max) << "] x" << config.uniq_m_count
       << ", |v| in [" << format_double(config.uniq_v_min) << ", "
       << format_double(config.uniq_v_max) << "] x" << config.uniq_v_count << ", "
       << config.uniq_angle_count << " angles\n";
    os << "control-cost coupling matrix (mean field type control): ";
    if (theta_violations == 0) {
        os << "positive definite at all " << theta_samples << " samples\n";
    } else {
        os << theta_violations << " of " << theta_samples
           << " samples fail; first at v=(" << format_double(theta_witness.x) << ", "
           << format_double(theta_witness.y) << "), m=" << format_double(theta_witness_m)
           << "\n";
    }
    os << "hamiltonian monotonicity matrix (mean field game): ";
    if (mfg_violations == 0) {
        os << "positive definite at all " << mfg_samples << " samples\n";
    } else {
        os << mfg_violations << " of " << mfg_samples << " samples fail; first at p=("
           << format_double(mfg_witness.x) << ", " << format_double(mfg_witness.y)
           << "), m=" << format_double(mfg_witness_m) << "\n";
    }
    os << "theta_pd=" << (theta_violations == 0 ? "true" : "false") << "\n";
    os << "theta_violations=" << theta_violations << "\n";
    os << "theta_samples=" << theta_samples << "\n";
    os << "mfg_pd=" << (mfg_violations == 0 ? "true" : "false") << "\n";
    os << "mfg_violations=" << mfg_violations << "\n";
    os << "mfg_samples=" << mfg_samples << "\n";
    return os.str();
}

}  // namespace mfc

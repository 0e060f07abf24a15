// Command-line front end: loads a config, runs the solver or the uniqueness
// audit through the C interface, and maps outcomes to exit codes
// (0 converged, 2 non-converged, 1 hard error).
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "mfcrowd/mfcrowd.h"

namespace {

constexpr int kErrbufLen = 1024;

struct ConfigDeleter {
    void operator()(mfc_config* c) const { mfc_config_free(c); }
};
struct ResultDeleter {
    void operator()(mfc_run_result* r) const { mfc_run_result_free(r); }
};

std::unique_ptr<mfc_config, ConfigDeleter> load_config_or_exit(
    const std::string& path, const std::string& mode, const std::string& out_dir) {
    char errbuf[kErrbufLen];
    mfc_config* raw = nullptr;
    if (mfc_config_load(path.c_str(), &raw, errbuf, kErrbufLen) != MFC_OK) {
        std::fprintf(stderr, "error: %s\n", errbuf);
        std::exit(1);
    }
    std::unique_ptr<mfc_config, ConfigDeleter> config(raw);
    if (!mode.empty() &&
        mfc_config_set(config.get(), "run.mode", mode.c_str(), errbuf, kErrbufLen) !=
            MFC_OK) {
        std::fprintf(stderr, "error: %s\n", errbuf);
        std::exit(1);
    }
    if (!out_dir.empty() &&
        mfc_config_set(config.get(), "output.dir", out_dir.c_str(), errbuf,
                       kErrbufLen) != MFC_OK) {
        std::fprintf(stderr, "error: %s\n", errbuf);
        std::exit(1);
    }
    return config;
}

int run_command(const std::string& config_path, const std::string& mode,
                const std::string& out_dir) {
    auto config = load_config_or_exit(config_path, mode, out_dir);
    char errbuf[kErrbufLen];
    mfc_run_result* raw = nullptr;
    if (mfc_run(config.get(), &raw, errbuf, kErrbufLen) != MFC_OK) {
        std::fprintf(stderr, "error: %s\n", errbuf);
        return 1;
    }
    std::unique_ptr<mfc_run_result, ResultDeleter> result(raw);
    const bool converged = mfc_run_converged(result.get()) != 0;
    std::printf("%s after %d iterations, final residual %.6g, outputs in %s\n",
                converged ? "converged" : "did not converge",
                mfc_run_iterations(result.get()),
                mfc_run_final_residual(result.get()),
                mfc_run_output_dir(result.get()));
    return converged ? 0 : 2;
}

int check_command(const std::string& config_path) {
    auto config = load_config_or_exit(config_path, "", "");
    char errbuf[kErrbufLen];
    char* report = nullptr;
    if (mfc_check_uniqueness(config.get(), &report, errbuf, kErrbufLen) != MFC_OK) {
        std::fprintf(stderr, "error: %s\n", errbuf);
        return 1;
    }
    std::fputs(report, stdout);
    mfc_string_free(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-difference solver for congestion-coupled mean field "
                 "games and mean field type control"};
    app.require_subcommand(1);

    std::string run_config, run_mode, run_out;
    CLI::App* run_cmd = app.add_subcommand("run", "Solve and write outputs");
    run_cmd->add_option("--config", run_config, "Config file path")->required();
    run_cmd->add_option("--mode", run_mode, "Override run.mode (mfg or mftc)");
    run_cmd->add_option("--out", run_out, "Override output directory");

    std::string check_config;
    CLI::App* check_cmd =
        app.add_subcommand("check-uniqueness", "Audit the uniqueness conditions");
    check_cmd->add_option("--config", check_config, "Config file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (run_cmd->parsed())
        return run_command(run_config, run_mode, run_out);
    return check_command(check_config);
}

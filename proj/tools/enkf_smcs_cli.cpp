#include <optional>
#include <string>

#include <CLI11.hpp>

#include "enkfsmcs/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string algorithm;
    std::string out_dir;
    int particles = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;

    enkfsmcs::CliOverrides overrides() const {
        enkfsmcs::CliOverrides ov;
        if (!algorithm.empty()) ov.algorithm = algorithm;
        if (!out_dir.empty()) ov.out_dir = out_dir;
        if (particles > 0) ov.particles = particles;
        if (seed_set) ov.seed = seed;
        return ov;
    }
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--algorithm", args.algorithm,
                    "algorithm to run: enkf, enkf_smcs or enkf_smcs_wr");
    cmd->add_option("--particles", args.particles, "override particle count");
    cmd->add_option("--seed", args.seed, "override run seed")
        ->each([&args](const std::string&) { args.seed_set = true; });
    cmd->add_option("--out", args.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential Bayesian parameter estimation with EnKF, EnKF-SMCS "
                 "and EnKF-SMCS-WR"};
    app.require_subcommand(1);

    CommonArgs sim_args, infer_args, cmp_args;
    std::string data_path;

    CLI::App* sim = app.add_subcommand("simulate", "simulate observations from the model");
    add_common(sim, sim_args);

    CLI::App* infer = app.add_subcommand("infer", "run one algorithm on a data file");
    add_common(infer, infer_args);
    infer->add_option("--data", data_path, "observation CSV")->required();

    CLI::App* cmp = app.add_subcommand("compare",
                                       "run the configured algorithms over all seeds on "
                                       "identical self-simulated data");
    add_common(cmp, cmp_args);

    CLI11_PARSE(app, argc, argv);

    return enkfsmcs::run_guarded([&] {
        if (sim->parsed()) {
            const auto cfg = enkfsmcs::load_config(sim_args.config_path);
            enkfsmcs::cmd_simulate(cfg, sim_args.overrides());
        } else if (infer->parsed()) {
            const auto cfg = enkfsmcs::load_config(infer_args.config_path);
            enkfsmcs::cmd_infer(cfg, data_path, infer_args.overrides());
        } else {
            const auto cfg = enkfsmcs::load_config(cmp_args.config_path);
            enkfsmcs::cmd_compare(cfg, cmp_args.overrides());
        }
    });
}

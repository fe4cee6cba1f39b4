#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "enkfsmcs/forward_model.hpp"
#include "enkfsmcs/run_record.hpp"
#include "enkfsmcs/smcs.hpp"

namespace enkfsmcs {

struct PriorConfig {
    std::string kind; // uniform_box | gaussian
    Vector lower, upper; // uniform_box
    Vector mean, std;    // gaussian (independent coordinates)
};

struct ModelConfig {
    std::string name; // bernoulli | lorenz63 | erk | linear_gaussian
    int steps = 0;
    double dt = 0.0;
    Vector truth;
    Vector noise_std; // diagonal R, one entry per observed component
    std::optional<PriorConfig> prior;
    // lorenz63
    Vector initial_state;
    std::string observe = "x";
    int substeps = 0; // 0 = model default
    // linear_gaussian
    int obs_dim = 2;
    std::uint64_t matrix_seed = 1;
};

struct AlgorithmConfig {
    std::string name; // enkf | enkf_smcs | enkf_smcs_wr
    int particles = 0; // 0 = inherit the experiment-level default
    double delta = 1e-4;
    double ess_min_fraction = 0.5;
    int delta_T_max = 10;
    double ess_resample_fraction = 0.5;
};

struct ExperimentConfig {
    int schema_version = 1;
    ModelConfig model;
    std::vector<AlgorithmConfig> algorithms;
    int default_particles = 1000;
    std::vector<std::uint64_t> seeds;
    std::string output_dir = "out";
};

// CLI flag overrides; each field replaces its config counterpart when set.
struct CliOverrides {
    std::optional<std::string> algorithm;
    std::optional<int> particles;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

std::unique_ptr<ForwardModel> build_model(const ModelConfig& mc);

// --- persistence ---------------------------------------------------------

// Observation CSV: header `t,y1,...,y_ny`, full-precision decimal text.
void write_observations_csv(const std::string& path,
                            const std::vector<ObservationRecord>& data);
std::vector<ObservationRecord> read_observations_csv(const std::string& path,
                                                     int expected_obs_dim);
void write_observation_sidecar(const std::string& path, const ModelConfig& mc,
                               std::uint64_t seed);

// Results CSV: header `t,param_index,mean,std,bias,ess,refined,resampled,model_evals`.
void write_results_csv(const std::string& path, const std::vector<RunRecord>& records);

struct ResultsRow {
    int t = 0;
    int param_index = 0;
    double mean = 0, std = 0, bias = 0, ess = 0;
    bool refined = false, resampled = false;
    long long model_evals = 0;
};
std::vector<ResultsRow> read_results_csv(const std::string& path);

std::string summary_json(const ModelConfig& mc, const AlgorithmConfig& ac, int particles,
                         std::uint64_t seed, const std::vector<RunRecord>& records);

// Aggregate report (pure function of the results files): per-step
// seed-averaged |bias| per algorithm and pairwise win counts per parameter.
struct ResultsEntry {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::string csv_path;
};
std::string aggregate_report_json(const std::string& model_name,
                                  const std::vector<ResultsEntry>& entries);

// --- runs ----------------------------------------------------------------

std::vector<RunRecord> run_algorithm(const ForwardModel& model,
                                     const std::vector<ObservationRecord>& data,
                                     const AlgorithmConfig& ac, int particles,
                                     std::uint64_t seed, const Vector& truth);

// --- CLI workflows; throw on failure, see run_guarded for exit codes ------

void cmd_simulate(const ExperimentConfig& cfg, const CliOverrides& ov);
void cmd_infer(const ExperimentConfig& cfg, const std::string& data_path,
               const CliOverrides& ov);
void cmd_compare(const ExperimentConfig& cfg, const CliOverrides& ov);

// 0 on success, 2 on configuration errors, 3 on numerical failure
// (step index reported on stderr).
int run_guarded(const std::function<void()>& body);

} // namespace enkfsmcs

#include "enkfsmcs/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "enkfsmcs/errors.hpp"
#include "enkfsmcs/models/bernoulli.hpp"
#include "enkfsmcs/models/erk.hpp"
#include "enkfsmcs/models/linear_gaussian.hpp"
#include "enkfsmcs/models/lorenz63.hpp"

namespace enkfsmcs {

namespace {

using nlohmann::json;

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Vector vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError("field '" + field + "' must be an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError("field '" + field + "' must contain numbers");
        v[i++] = e.get<double>();
    }
    return v;
}

json json_from_vector(const Vector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

PriorConfig parse_prior(const json& j) {
    PriorConfig pc;
    pc.kind = j.value("kind", "");
    if (pc.kind == "uniform_box") {
        if (!j.contains("lower") || !j.contains("upper"))
            throw ConfigError("prior: uniform_box needs 'lower' and 'upper'");
        pc.lower = vector_from_json(j.at("lower"), "prior.lower");
        pc.upper = vector_from_json(j.at("upper"), "prior.upper");
    } else if (pc.kind == "gaussian") {
        if (!j.contains("mean") || !j.contains("std"))
            throw ConfigError("prior: gaussian needs 'mean' and 'std'");
        pc.mean = vector_from_json(j.at("mean"), "prior.mean");
        pc.std = vector_from_json(j.at("std"), "prior.std");
        if (pc.mean.size() != pc.std.size())
            throw ConfigError("prior: 'mean' and 'std' must have the same length");
    } else {
        throw ConfigError("prior.kind must be 'uniform_box' or 'gaussian'");
    }
    return pc;
}

PriorSpec prior_from_config(const PriorConfig& pc) {
    if (pc.kind == "uniform_box") return PriorSpec::uniform_box(pc.lower, pc.upper);
    Matrix cov = Matrix::Zero(pc.mean.size(), pc.mean.size());
    for (Eigen::Index i = 0; i < pc.mean.size(); ++i) cov(i, i) = pc.std[i] * pc.std[i];
    return PriorSpec::gaussian(pc.mean, cov);
}

AlgorithmConfig parse_algorithm(const json& j) {
    AlgorithmConfig ac;
    if (j.is_string()) {
        ac.name = j.get<std::string>();
    } else if (j.is_object()) {
        ac.name = j.value("name", "");
        ac.particles = j.value("particles", 0);
        ac.delta = j.value("delta", 1e-4);
        ac.ess_min_fraction = j.value("ess_min_fraction", 0.5);
        ac.delta_T_max = j.value("delta_T_max", 10);
        ac.ess_resample_fraction = j.value("ess_resample_fraction", 0.5);
    } else {
        throw ConfigError("algorithms entries must be names or objects");
    }
    static const std::set<std::string> known = {"enkf", "enkf_smcs", "enkf_smcs_wr"};
    if (!known.count(ac.name))
        throw ConfigError("unknown algorithm '" + ac.name +
                          "' (expected enkf, enkf_smcs or enkf_smcs_wr)");
    if (!(ac.ess_min_fraction > 0.0 && ac.ess_min_fraction <= 1.0) ||
        !(ac.ess_resample_fraction > 0.0 && ac.ess_resample_fraction <= 1.0))
        throw ConfigError("algorithm fractions must lie in (0, 1]");
    if (ac.delta_T_max < 1) throw ConfigError("delta_T_max must be >= 1");
    return ac;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    cfg.schema_version = root.value("schema_version", 0);
    if (cfg.schema_version != 1)
        throw ConfigError("config requires \"schema_version\": 1");

    if (!root.contains("model") || !root.at("model").is_object())
        throw ConfigError("config needs a 'model' object");
    const json& jm = root.at("model");
    ModelConfig& mc = cfg.model;
    mc.name = jm.value("name", "");
    mc.steps = jm.value("T", 0);
    mc.dt = jm.value("dt", 0.0);
    if (jm.contains("truth")) mc.truth = vector_from_json(jm.at("truth"), "model.truth");
    if (jm.contains("noise_std"))
        mc.noise_std = vector_from_json(jm.at("noise_std"), "model.noise_std");
    if (jm.contains("prior")) mc.prior = parse_prior(jm.at("prior"));
    if (jm.contains("initial_state"))
        mc.initial_state = vector_from_json(jm.at("initial_state"), "model.initial_state");
    mc.observe = jm.value("observe", "x");
    mc.substeps = jm.value("substeps", 0);
    mc.obs_dim = jm.value("obs_dim", 2);
    mc.matrix_seed = jm.value("matrix_seed", 1ull);

    if (root.contains("algorithms")) {
        for (const auto& ja : root.at("algorithms"))
            cfg.algorithms.push_back(parse_algorithm(ja));
    }
    if (cfg.algorithms.empty())
        throw ConfigError("config needs a non-empty 'algorithms' list");

    cfg.default_particles = root.value("particles", 1000);
    if (cfg.default_particles < 2) throw ConfigError("'particles' must be >= 2");

    if (root.contains("seeds")) {
        for (const auto& s : root.at("seeds")) {
            if (!s.is_number_unsigned() && !s.is_number_integer())
                throw ConfigError("'seeds' must contain integers");
            cfg.seeds.push_back(s.get<std::uint64_t>());
        }
    }
    if (cfg.seeds.empty()) throw ConfigError("config needs a non-empty 'seeds' list");

    cfg.output_dir = root.value("output_dir", "out");

    // fail fast on inconsistent model blocks
    auto model = build_model(cfg.model);
    if (mc.truth.size() != model->param_dim())
        throw ConfigError("model.truth has dimension " + std::to_string(mc.truth.size()) +
                          ", expected " + std::to_string(model->param_dim()));
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::unique_ptr<ForwardModel> build_model(const ModelConfig& mc) {
    if (mc.name == "bernoulli") {
        if (mc.steps < 1 || !(mc.dt > 0.0))
            throw ConfigError("bernoulli: needs T >= 1 and dt > 0");
        if (mc.noise_std.size() != 1)
            throw ConfigError("bernoulli: noise_std must have exactly 1 entry");
        return std::make_unique<BernoulliModel>(mc.steps, mc.dt, mc.noise_std[0]);
    }
    if (mc.name == "lorenz63") {
        if (mc.steps < 1 || !(mc.dt > 0.0))
            throw ConfigError("lorenz63: needs T >= 1 and dt > 0");
        if (mc.initial_state.size() != 3)
            throw ConfigError("lorenz63: initial_state must have 3 entries");
        if (mc.noise_std.size() != 1)
            throw ConfigError("lorenz63: noise_std must have exactly 1 entry");
        int component = -1;
        if (mc.observe == "x") component = 0;
        else if (mc.observe == "y") component = 1;
        else if (mc.observe == "z") component = 2;
        else throw ConfigError("lorenz63: observe must be 'x', 'y' or 'z'");
        PriorSpec prior = mc.prior ? prior_from_config(*mc.prior)
                                   : Lorenz63Model::default_prior();
        if (prior.dim() != 3) throw ConfigError("lorenz63: prior must have dimension 3");
        const int substeps = mc.substeps > 0 ? mc.substeps : 20;
        return std::make_unique<Lorenz63Model>(mc.initial_state, component, mc.steps, mc.dt,
                                               substeps, mc.noise_std[0], std::move(prior));
    }
    if (mc.name == "erk") {
        if (mc.prior || mc.noise_std.size() != 0 || mc.initial_state.size() != 0)
            throw ConfigError("erk: prior, noise_std and initial_state are built in "
                              "and cannot be overridden");
        const int steps = mc.steps > 0 ? mc.steps : 50;
        const double dt = mc.dt > 0.0 ? mc.dt : 0.001;
        const int substeps = mc.substeps > 0 ? mc.substeps : 4;
        return std::make_unique<ErkModel>(steps, dt, substeps);
    }
    if (mc.name == "linear_gaussian") {
        if (mc.steps < 1) throw ConfigError("linear_gaussian: needs T >= 1");
        if (mc.truth.size() < 1) throw ConfigError("linear_gaussian: needs truth");
        const int n_x = static_cast<int>(mc.truth.size());
        const int n_y = mc.obs_dim;
        if (n_y < 1) throw ConfigError("linear_gaussian: obs_dim must be >= 1");
        Matrix r = Matrix::Identity(n_y, n_y);
        if (mc.noise_std.size() == 1) {
            r *= mc.noise_std[0] * mc.noise_std[0];
        } else if (mc.noise_std.size() == n_y) {
            for (int i = 0; i < n_y; ++i) r(i, i) = mc.noise_std[i] * mc.noise_std[i];
        } else {
            throw ConfigError("linear_gaussian: noise_std must have 1 or obs_dim entries");
        }
        auto base = LinearGaussianModel::random(n_x, n_y, mc.steps, 1.0, mc.matrix_seed);
        std::vector<Matrix> a;
        for (int t = 1; t <= mc.steps; ++t) a.push_back(base.design_matrix(t));
        PriorSpec prior = mc.prior
                              ? prior_from_config(*mc.prior)
                              : PriorSpec::gaussian(Vector::Zero(n_x), Matrix::Identity(n_x, n_x));
        if (prior.dim() != n_x)
            throw ConfigError("linear_gaussian: prior dimension must match truth");
        return std::make_unique<LinearGaussianModel>(std::move(a), std::move(r),
                                                     std::move(prior));
    }
    throw ConfigError("unknown model '" + mc.name +
                      "' (expected bernoulli, lorenz63, erk or linear_gaussian)");
}

void write_observations_csv(const std::string& path,
                            const std::vector<ObservationRecord>& data) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write observations to '" + path + "'");
    const int n_y = data.empty() ? 0 : static_cast<int>(data.front().y.size());
    out << "t";
    for (int j = 1; j <= n_y; ++j) out << ",y" << j;
    out << "\n";
    for (const auto& rec : data) {
        out << rec.t;
        for (Eigen::Index j = 0; j < rec.y.size(); ++j) out << "," << fmt_g17(rec.y[j]);
        out << "\n";
    }
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}
} // namespace

std::vector<ObservationRecord> read_observations_csv(const std::string& path,
                                                     int expected_obs_dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open data file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("data file '" + path + "' is empty");
    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t")
        throw ConfigError("data file '" + path + "': header must start with 't'");
    const int n_y = static_cast<int>(header.size()) - 1;
    if (n_y != expected_obs_dim)
        throw ConfigError("data file '" + path + "' has " + std::to_string(n_y) +
                          " observation columns, model expects " +
                          std::to_string(expected_obs_dim));
    std::vector<ObservationRecord> data;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<int>(fields.size()) != n_y + 1)
            throw ConfigError("data file '" + path + "' line " + std::to_string(line_no) +
                              ": wrong field count");
        ObservationRecord rec;
        rec.t = std::stoi(fields[0]);
        rec.y.resize(n_y);
        for (int j = 0; j < n_y; ++j) rec.y[j] = std::stod(fields[static_cast<std::size_t>(j) + 1]);
        data.push_back(std::move(rec));
    }
    return data;
}

void write_observation_sidecar(const std::string& path, const ModelConfig& mc,
                               std::uint64_t seed) {
    auto model = build_model(mc);
    Vector noise_std(model->obs_dim());
    for (int i = 0; i < model->obs_dim(); ++i)
        noise_std[i] = std::sqrt(model->obs_noise_cov(1)(i, i));
    json j;
    j["schema_version"] = 1;
    j["model"] = model->name();
    j["T"] = model->step_count();
    j["dt"] = model->dt_obs();
    j["truth"] = json_from_vector(mc.truth);
    j["noise_std"] = json_from_vector(noise_std);
    j["seed"] = seed;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write sidecar to '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_results_csv(const std::string& path, const std::vector<RunRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write results to '" + path + "'");
    out << "t,param_index,mean,std,bias,ess,refined,resampled,model_evals\n";
    for (const auto& rec : records) {
        for (Eigen::Index p = 0; p < rec.mean.size(); ++p) {
            out << rec.t << "," << p << "," << fmt_g17(rec.mean[p]) << ","
                << fmt_g17(rec.stddev[p]) << "," << fmt_g17(rec.bias[p]) << ","
                << fmt_g17(rec.ess) << "," << (rec.refined ? 1 : 0) << ","
                << (rec.resampled ? 1 : 0) << "," << rec.model_evals << "\n";
        }
    }
}

std::vector<ResultsRow> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open results file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line != "t,param_index,mean,std,bias,ess,refined,resampled,model_evals")
        throw ConfigError("results file '" + path + "': unexpected header");
    std::vector<ResultsRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9)
            throw ConfigError("results file '" + path + "': wrong field count");
        ResultsRow r;
        r.t = std::stoi(f[0]);
        r.param_index = std::stoi(f[1]);
        r.mean = std::stod(f[2]);
        r.std = std::stod(f[3]);
        r.bias = std::stod(f[4]);
        r.ess = std::stod(f[5]);
        r.refined = f[6] == "1";
        r.resampled = f[7] == "1";
        r.model_evals = std::stoll(f[8]);
        rows.push_back(r);
    }
    return rows;
}

std::string summary_json(const ModelConfig& mc, const AlgorithmConfig& ac, int particles,
                         std::uint64_t seed, const std::vector<RunRecord>& records) {
    json j;
    j["schema_version"] = 1;
    j["model"] = mc.name;
    j["algorithm"] = ac.name;
    j["particles"] = particles;
    j["seed"] = seed;
    j["steps"] = records.size();
    const auto& last = records.back();
    j["final_step"] = last.t;
    j["final_mean"] = json_from_vector(last.mean);
    j["final_std"] = json_from_vector(last.stddev);
    j["final_bias"] = json_from_vector(last.bias);
    j["final_ess"] = last.ess;
    j["total_model_evals"] = last.model_evals;
    json refinement = json::array();
    json resamples = json::array();
    for (const auto& rec : records) {
        if (rec.refined) refinement.push_back(rec.t);
        if (rec.resampled) resamples.push_back(rec.t);
    }
    j["refinement_steps"] = refinement;
    j["resample_steps"] = resamples;
    return j.dump(2) + "\n";
}

std::string aggregate_report_json(const std::string& model_name,
                                  const std::vector<ResultsEntry>& entries) {
    // algorithm -> (t, param) -> sum |bias| and counts
    struct Cell {
        double sum_abs_bias = 0.0;
        int n = 0;
    };
    std::map<std::string, std::map<std::pair<int, int>, Cell>> table;
    std::map<std::string, std::set<std::uint64_t>> seeds_by_alg;
    int max_t = 0, n_params = 0;

    for (const auto& entry : entries) {
        const auto rows = read_results_csv(entry.csv_path);
        seeds_by_alg[entry.algorithm].insert(entry.seed);
        for (const auto& r : rows) {
            auto& cell = table[entry.algorithm][{r.t, r.param_index}];
            cell.sum_abs_bias += std::abs(r.bias);
            cell.n += 1;
            max_t = std::max(max_t, r.t);
            n_params = std::max(n_params, r.param_index + 1);
        }
    }

    json j;
    j["schema_version"] = 1;
    j["model"] = model_name;
    j["final_step"] = max_t;

    json algs = json::array();
    for (const auto& [alg, seeds] : seeds_by_alg) {
        json a;
        a["name"] = alg;
        a["num_seeds"] = seeds.size();
        algs.push_back(a);
    }
    j["algorithms"] = algs;

    // seed-averaged |bias| per step and parameter
    json by_step;
    for (const auto& [alg, cells] : table) {
        json rows = json::array();
        for (int t = 1; t <= max_t; ++t) {
            json row = json::array();
            row.push_back(t);
            for (int p = 0; p < n_params; ++p) {
                const auto it = cells.find({t, p});
                row.push_back(it == cells.end() || it->second.n == 0
                                  ? 0.0
                                  : it->second.sum_abs_bias / it->second.n);
            }
            rows.push_back(row);
        }
        by_step[alg] = rows;
    }
    j["mean_abs_bias_by_step"] = by_step;

    // final-step comparison and pairwise win counts per parameter
    json per_param = json::array();
    std::map<std::string, std::map<std::string, int>> wins;
    for (int p = 0; p < n_params; ++p) {
        json entry;
        entry["param_index"] = p;
        json final_bias;
        for (const auto& [alg, cells] : table) {
            const auto it = cells.find({max_t, p});
            if (it != cells.end() && it->second.n > 0)
                final_bias[alg] = it->second.sum_abs_bias / it->second.n;
        }
        entry["mean_abs_bias_final"] = final_bias;
        per_param.push_back(entry);
        for (const auto& [a, va] : final_bias.items()) {
            for (const auto& [b, vb] : final_bias.items()) {
                if (a == b) continue;
                if (va.get<double>() < vb.get<double>()) wins[a][b] += 1;
            }
        }
    }
    j["per_parameter"] = per_param;
    json jwins;
    for (const auto& [a, row] : wins) {
        for (const auto& [b, n] : row) jwins[a + "<" + b] = n;
    }
    j["pairwise_wins"] = jwins;
    return j.dump(2) + "\n";
}

std::vector<RunRecord> run_algorithm(const ForwardModel& model,
                                     const std::vector<ObservationRecord>& data,
                                     const AlgorithmConfig& ac, int particles,
                                     std::uint64_t seed, const Vector& truth) {
    if (ac.name == "enkf") return enkf_run(model, data, particles, seed, truth);
    SmcsConfig sc;
    sc.particle_count = particles;
    sc.delta = ac.delta;
    sc.ess_min_fraction = ac.ess_min_fraction;
    sc.delta_T_max = ac.delta_T_max;
    sc.ess_resample_fraction = ac.ess_resample_fraction;
    sc.seed = seed;
    if (ac.name == "enkf_smcs") {
        sc.algorithm = Algorithm::enkf_smcs;
        return run_enkf_smcs(model, data, sc, truth);
    }
    if (ac.name == "enkf_smcs_wr") {
        sc.algorithm = Algorithm::enkf_smcs_wr;
        return run_enkf_smcs_wr(model, data, sc, truth);
    }
    throw ConfigError("unknown algorithm '" + ac.name + "'");
}

namespace {

int pick_particles(const ExperimentConfig& cfg, const AlgorithmConfig& ac,
                   const CliOverrides& ov) {
    if (ov.particles) return *ov.particles;
    return ac.particles > 0 ? ac.particles : cfg.default_particles;
}

std::vector<AlgorithmConfig> select_algorithms(const ExperimentConfig& cfg,
                                               const CliOverrides& ov) {
    if (!ov.algorithm) return cfg.algorithms;
    for (const auto& ac : cfg.algorithms)
        if (ac.name == *ov.algorithm) return {ac};
    // Not listed in the config: run it with default settings.
    AlgorithmConfig ac;
    ac.name = *ov.algorithm;
    static const std::set<std::string> known = {"enkf", "enkf_smcs", "enkf_smcs_wr"};
    if (!known.count(ac.name)) throw ConfigError("unknown algorithm '" + ac.name + "'");
    return {ac};
}

std::string out_dir_for(const ExperimentConfig& cfg, const CliOverrides& ov) {
    const std::string dir = ov.out_dir ? *ov.out_dir : cfg.output_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

void cmd_simulate(const ExperimentConfig& cfg, const CliOverrides& ov) {
    const std::string dir = out_dir_for(cfg, ov);
    const std::uint64_t seed = ov.seed ? *ov.seed : cfg.seeds.front();
    auto model = build_model(cfg.model);
    const auto data = simulate_observations(*model, cfg.model.truth, seed);
    const std::string base = dir + "/" + model->name() + "_seed" + std::to_string(seed);
    write_observations_csv(base + ".csv", data);
    write_observation_sidecar(base + ".meta.json", cfg.model, seed);
    std::cout << base + ".csv" << "\n" << base + ".meta.json" << "\n";
}

void cmd_infer(const ExperimentConfig& cfg, const std::string& data_path,
               const CliOverrides& ov) {
    const std::string dir = out_dir_for(cfg, ov);
    const std::uint64_t seed = ov.seed ? *ov.seed : cfg.seeds.front();
    const auto algorithms = select_algorithms(cfg, ov);
    const AlgorithmConfig& ac = algorithms.front();

    auto model = build_model(cfg.model);
    const auto data = read_observations_csv(data_path, model->obs_dim());
    if (static_cast<int>(data.size()) < model->step_count())
        throw ConfigError("data file has " + std::to_string(data.size()) +
                          " rows, model expects " + std::to_string(model->step_count()));

    const int particles = pick_particles(cfg, ac, ov);
    const auto records = run_algorithm(*model, data, ac, particles, seed, cfg.model.truth);

    const std::string stem =
        dir + "/results_" + ac.name + "_seed" + std::to_string(seed);
    write_results_csv(stem + ".csv", records);
    const std::string summary = summary_json(cfg.model, ac, particles, seed, records);
    std::ofstream(stem + "_summary.json") << summary;
    std::cout << summary;
}

void cmd_compare(const ExperimentConfig& cfg, const CliOverrides& ov) {
    const std::string dir = out_dir_for(cfg, ov);
    const auto algorithms = select_algorithms(cfg, ov);

    std::vector<ResultsEntry> entries;
    for (const std::uint64_t seed : cfg.seeds) {
        auto data_model = build_model(cfg.model);
        const auto data = simulate_observations(*data_model, cfg.model.truth, seed);
        for (const auto& ac : algorithms) {
            auto model = build_model(cfg.model);
            const int particles = pick_particles(cfg, ac, ov);
            const auto records =
                run_algorithm(*model, data, ac, particles, seed, cfg.model.truth);
            const std::string path =
                dir + "/results_" + ac.name + "_seed" + std::to_string(seed) + ".csv";
            write_results_csv(path, records);
            entries.push_back(ResultsEntry{ac.name, seed, path});
        }
    }

    const std::string report = aggregate_report_json(cfg.model.name, entries);
    std::ofstream(dir + "/report.json") << report;
    std::cout << report;
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateEnsemble& e) {
        std::cerr << "numerical failure";
        if (e.step() >= 0) std::cerr << " at step " << e.step();
        std::cerr << ": " << e.what() << "\n";
        return 3;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const NonFiniteState& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace enkfsmcs

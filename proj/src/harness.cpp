// Copyright 2026 The henntomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "henntomo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "henntomo/error.hpp"
#include "henntomo/rng.hpp"

namespace henntomo {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void rethrow_as(ErrorKind kind, const std::string &msg) {
    switch (kind) {
        case ErrorKind::kSize:
            throw SizeError(msg);
        case ErrorKind::kContract:
            throw ContractError(msg);
        case ErrorKind::kInput:
            throw InputError(msg);
        case ErrorKind::kNumeric:
            break;
    }
    throw NumericError(msg);
}

template <class F>
auto staged(const char *stage, std::uint64_t seed, F &&f) {
    try {
        return f();
    } catch (const Error &e) {
        rethrow_as(e.kind(), std::string("stage ") + stage + " (seed " + std::to_string(seed) + "): " + e.what());
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::ofstream open_csv(const fs::path &path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write " + path.string());
    }
    f << std::setprecision(12);
    return f;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const std::vector<std::string> kFigureTags = {"fig2", "fig3", "fig5", "fig6", "fig7", "fig8", "table1"};

}  // namespace

std::string to_string(Source source) {
    switch (source) {
        case Source::kGenerated:
            return "generated";
        case Source::kOneSpin:
            return "one_spin";
        case Source::kChain3:
            return "chain3";
        case Source::kGate:
            return "gate";
        case Source::kSpecFile:
            return "spec_file";
    }
    return "generated";
}

Source parse_source(const std::string &name) {
    for (Source s : {Source::kGenerated, Source::kOneSpin, Source::kChain3, Source::kGate, Source::kSpecFile}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw InputError("unknown source '" + name + "'");
}

void ExperimentConfig::validate() const {
    if (n < 1 || n > kMaxSpins) {
        throw InputError("n must be in 1.." + std::to_string(kMaxSpins));
    }
    partition_subspaces(n, observed);
    if (state_count != 0 && static_cast<std::size_t>(state_count) < basis_size(n)) {
        throw InputError("state_count must be at least 4^n = " + std::to_string(basis_size(n)));
    }
    grid.validate();
    training.validate();
    if (realizations < 1) {
        throw InputError("realizations must be at least 1");
    }
    if (rounds < 1) {
        throw InputError("rounds must be at least 1");
    }
    if (convert_substeps < 1) {
        throw InputError("convert_substeps must be at least 1");
    }
    if (threads < 1) {
        throw InputError("threads must be at least 1");
    }
    if (!(noise_sigma >= 0.0)) {
        throw InputError("noise_sigma must be non-negative");
    }
    if (!(threshold >= 0.0 && threshold < 1.0)) {
        throw InputError("threshold must be in [0, 1)");
    }
    if (source == Source::kGenerated && (family == Family::kGateStatic || family == Family::kGateTimeDep)) {
        throw InputError("gate families need source 'gate'");
    }
    if (source == Source::kSpecFile && spec_file.empty()) {
        throw InputError("source 'spec_file' needs a spec_file path");
    }
}

int ExperimentConfig::default_state_count(int n) {
    switch (n) {
        case 3:
            return 100;
        case 4:
            return 300;
        case 5:
            return 1100;
        default:
            return static_cast<int>(basis_size(n));
    }
}

int ExperimentConfig::effective_state_count() const { return state_count > 0 ? state_count : default_state_count(n); }

ExperimentConfig config_from_json(const Json &j) {
    try {
        if (!j.is_object()) {
            throw InputError("config must be a JSON object");
        }
        ExperimentConfig c;
        c.name = j.value("name", c.name);
        c.source = parse_source(j.value("source", std::string("generated")));
        c.seed = j.value("seed", c.seed);
        switch (c.source) {
            case Source::kOneSpin:
                c.n = 1;
                break;
            case Source::kChain3:
                c.n = 3;
                break;
            case Source::kGate:
                c.n = 3;
                c.observed = {2};
                c.gate = parse_gate(j.value("gate", std::string("toffoli")));
                c.family = j.value("timedep", false) ? Family::kGateTimeDep : Family::kGateStatic;
                c.grid = TimeGrid{0.0, 1.0, 100, 10};
                break;
            case Source::kSpecFile:
                c.spec_file = j.at("spec_file").get<std::string>();
                c.n = spec_from_json(read_json(c.spec_file)).n;
                break;
            case Source::kGenerated:
                c.n = j.value("n", c.n);
                c.family = parse_family(j.value("family", to_string(c.family)));
                c.topology = parse_topology_tag(j.value("topology", to_string(c.topology)));
                break;
        }
        c.observed = j.value("observed", c.observed);
        c.state_count = j.value("state_count", c.state_count);
        if (j.contains("grid")) {
            c.grid = grid_from_json(j.at("grid"), c.grid);
        }
        if (j.contains("derivative_mode")) {
            c.derivative_mode = parse_derivative_mode(j.at("derivative_mode").get<std::string>());
        }
        c.noise_sigma = j.value("noise_sigma", c.noise_sigma);
        c.threshold = j.value("threshold", c.threshold);
        c.training = TrainingConfig::defaults_for(c.n);
        if (j.contains("training")) {
            c.training = training_from_json(j.at("training"), c.training);
        }
        c.realizations = j.value("realizations", c.realizations);
        c.rounds = j.value("rounds", c.rounds);
        c.convert_substeps = j.value("convert_substeps", c.convert_substeps);
        c.threads = j.value("threads", c.threads);
        c.out_dir = j.value("out", std::string());
        c.validate();
        return c;
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed config: ") + e.what());
    } catch (const SizeError &e) {
        throw InputError(e.what());
    }
}

ExperimentConfig load_config(const fs::path &path) { return config_from_json(read_json(path)); }

Json config_to_json(const ExperimentConfig &c) {
    Json j;
    j["name"] = c.name;
    j["source"] = to_string(c.source);
    j["family"] = to_string(c.family);
    j["topology"] = to_string(c.topology);
    j["gate"] = to_string(c.gate);
    j["timedep"] = c.family == Family::kGateTimeDep;
    j["spec_file"] = c.spec_file;
    j["n"] = c.n;
    j["observed"] = c.observed;
    j["state_count"] = c.effective_state_count();
    j["grid"] = grid_to_json(c.grid);
    j["derivative_mode"] = to_string(c.derivative_mode);
    j["noise_sigma"] = c.noise_sigma;
    j["threshold"] = c.threshold;
    j["training"] = training_to_json(c.training);
    j["realizations"] = c.realizations;
    j["rounds"] = c.rounds;
    j["convert_substeps"] = c.convert_substeps;
    j["seed"] = c.seed;
    return j;
}

std::string config_hash(const ExperimentConfig &config) {
    const std::string text = config_to_json(config).dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

HamiltonianSpec make_spec(const ExperimentConfig &config, std::uint64_t seed) {
    switch (config.source) {
        case Source::kOneSpin:
            return one_spin_sine();
        case Source::kChain3:
            return three_spin_chain();
        case Source::kGate:
            return gate_hamiltonian(config.gate, config.family == Family::kGateTimeDep);
        case Source::kSpecFile:
            return spec_from_json(read_json(config.spec_file));
        case Source::kGenerated:
            break;
    }
    const std::uint64_t hs = derive_seed(seed, {static_cast<std::uint64_t>(Stream::kHamiltonian)});
    if (config.family == Family::kLongRange) {
        return gen_long_range(config.n, hs);
    }
    return gen_two_body(NetworkTopology::make(config.topology, config.n), hs);
}

RunArtifacts run_pipeline(const ExperimentConfig &config, std::uint64_t seed, Stage last) {
    const auto t0 = std::chrono::steady_clock::now();
    RunArtifacts art;
    art.seed = seed;
    art.grid = config.grid;
    auto stream = [seed](Stream s) { return derive_seed(seed, {static_cast<std::uint64_t>(s)}); };

    art.spec = staged("generate", seed, [&] { return make_spec(config, seed); });
    if (art.spec.n != config.n) {
        throw InputError("spec has " + std::to_string(art.spec.n) + " spins, config says " + std::to_string(config.n));
    }
    art.true_coefficients = spec_coefficients(art.spec, config.grid);
    if (last == Stage::kGenerate) {
        art.seconds = seconds_since(t0);
        return art;
    }

    staged("simulate", seed, [&] {
        art.ensemble = gen_initial_states(config.n, config.effective_state_count(), stream(Stream::kInitialStates));
        art.observations = measure_expectations(art.spec, art.ensemble, observables_for(config.n, config.observed),
                                                config.observed, config.grid, config.derivative_mode);
        if (config.noise_sigma > 0.0) {
            art.observations = add_noise(art.observations, config.noise_sigma, stream(Stream::kNoise));
        }
        return 0;
    });
    if (last == Stage::kSimulate) {
        art.seconds = seconds_since(t0);
        return art;
    }

    art.reconstruction =
        staged("reconstruct", seed, [&] { return reconstruct_heisenberg(art.observations, art.ensemble); });
    if (last == Stage::kReconstruct) {
        art.seconds = seconds_since(t0);
        return art;
    }

    art.prediction = staged("train", seed, [&] {
        const LossContext ctx =
            LossContext::build(art.ensemble, art.reconstruction.operators, art.observations.derivatives);
        TrainingConfig tc = config.training;
        tc.seed = stream(Stream::kTraining);
        return ensemble_train(ctx, tc, config.rounds, config.grid, config.convert_substeps);
    });
    if (last == Stage::kTrain) {
        art.seconds = seconds_since(t0);
        return art;
    }

    art.report = staged("score", seed, [&] {
        return score_prediction(art.prediction->mean_coefficients, art.true_coefficients, config.grid,
                                true_link_set(art.spec), config.observed, config.threshold);
    });
    art.seconds = seconds_since(t0);
    return art;
}

void persist_artifacts(const fs::path &dir, const RunArtifacts &art, const std::string &hash) {
    fs::create_directories(dir);
    write_json(dir / "spec.json", spec_to_json(art.spec), hash);
    write_coefficients_csv(dir / "truth.csv", art.grid, art.true_coefficients);
    if (!art.ensemble.states.empty()) {
        write_json(dir / "observations.json", observations_header(art.observations), hash);
        write_observations_csv(dir / "observations.csv", art.observations);
    }
    if (!art.reconstruction.operators.empty()) {
        Json j;
        j["relative_residual"] = art.reconstruction.relative_residual;
        j["condition_estimate"] = art.reconstruction.condition_estimate;
        j["grid"] = grid_to_json(art.observations.grid);
        write_json(dir / "reconstruction.json", j, hash);
        write_operator_series(dir, "heisenberg", art.reconstruction.operators);
    }
    if (art.prediction) {
        const auto &runs = art.prediction->runs;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            const std::string tag = runs.size() == 1 ? "" : "_" + std::to_string(r);
            write_json(dir / ("params" + tag + ".json"), params_to_json(runs[r].params), hash);
            write_loss_csv(dir / ("loss" + tag + ".csv"), runs[r].loss_history);
        }
        write_coefficients_csv(dir / "prediction.csv", art.prediction->grid, art.prediction->mean_coefficients);
    }
    if (art.report) {
        Json j = report_to_json(*art.report);
        j["seed"] = art.seed;
        j["seconds"] = art.seconds;
        write_json(dir / "report.json", j, hash);
    }
}

TomographyReport run_single(const ExperimentConfig &config) {
    config.validate();
    const RunArtifacts art = run_pipeline(config, config.seed);
    if (!config.out_dir.empty()) {
        persist_artifacts(config.out_dir, art, config_hash(config));
    }
    return *art.report;
}

MetricSummary summarize(const std::vector<double> &values) {
    MetricSummary s;
    s.count = static_cast<int>(values.size());
    if (values.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) {
        sq += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(sq / static_cast<double>(values.size()));
    return s;
}

int SweepResult::failures() const {
    return static_cast<int>(std::count_if(realizations.begin(), realizations.end(),
                                          [](const RealizationOutcome &o) { return !o.report.has_value(); }));
}

std::uint64_t realization_seed(std::uint64_t master, int index) {
    return derive_seed(master, {static_cast<std::uint64_t>(index)});
}

void aggregate(SweepResult &result) {
    std::vector<double> ft;
    std::vector<double> ftp;
    std::vector<double> fl;
    for (const auto &o : result.realizations) {
        if (!o.report) {
            continue;
        }
        ft.push_back(o.report->f_t);
        if (o.report->f_tprime) {
            ftp.push_back(*o.report->f_tprime);
        }
        if (o.report->f_local) {
            fl.push_back(*o.report->f_local);
        }
    }
    result.f_t = summarize(ft);
    result.f_tprime = summarize(ftp);
    result.f_local = summarize(fl);
}

SweepResult run_sweep(const ExperimentConfig &config) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const std::string hash = config_hash(config);
    SweepResult result;
    result.realizations.resize(static_cast<std::size_t>(config.realizations));
    std::atomic<int> next{0};
    std::mutex io_mutex;

    auto worker = [&] {
        for (int r = next++; r < config.realizations; r = next++) {
            RealizationOutcome &out = result.realizations[static_cast<std::size_t>(r)];
            out.index = r;
            out.seed = realization_seed(config.seed, r);
            const auto tr = std::chrono::steady_clock::now();
            try {
                RunArtifacts art = run_pipeline(config, out.seed);
                out.report = art.report;
                if (!config.out_dir.empty()) {
                    const fs::path dir = config.out_dir / ("realization_" + std::to_string(r));
                    std::lock_guard<std::mutex> lock(io_mutex);
                    fs::create_directories(dir);
                    write_json(dir / "spec.json", spec_to_json(art.spec), hash);
                    Json rep = report_to_json(*art.report);
                    rep["seed"] = out.seed;
                    write_json(dir / "report.json", rep, hash);
                    write_loss_csv(dir / "loss.csv", art.prediction->runs.front().loss_history);
                }
            } catch (const std::exception &e) {
                out.error = e.what();
            }
            out.seconds = seconds_since(tr);
        }
    };
    const int n_workers = std::min(config.threads, config.realizations);
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    aggregate(result);
    result.wall_seconds = seconds_since(t0);
    if (!config.out_dir.empty()) {
        Json j = sweep_to_json(result);
        j["config"] = config_to_json(config);
        write_json(config.out_dir / "sweep.json", j, hash);
    }
    return result;
}

Json sweep_to_json(const SweepResult &result) {
    auto metric = [](const MetricSummary &m) { return Json{{"mean", m.mean}, {"std", m.std}, {"count", m.count}}; };
    Json runs = Json::array();
    for (const auto &o : result.realizations) {
        Json r{{"index", o.index}, {"seed", o.seed}, {"seconds", o.seconds}};
        if (o.report) {
            r["f_t"] = o.report->f_t;
            r["f_tprime"] = o.report->f_tprime ? Json(*o.report->f_tprime) : Json(nullptr);
            r["f_local"] = o.report->f_local ? Json(*o.report->f_local) : Json(nullptr);
        } else {
            r["error"] = o.error;
        }
        runs.push_back(r);
    }
    return {{"realizations", runs},      {"failures", result.failures()},    {"f_t", metric(result.f_t)},
            {"f_tprime", metric(result.f_tprime)}, {"f_local", metric(result.f_local)},
            {"wall_seconds", result.wall_seconds}};
}

std::vector<NoisePoint> run_noise_sweep(const ExperimentConfig &config, const std::vector<double> &sigmas) {
    std::vector<NoisePoint> out;
    for (double sigma : sigmas) {
        ExperimentConfig c = config;
        c.noise_sigma = sigma;
        c.derivative_mode = DerivativeMode::kFiniteDiff;
        if (!config.out_dir.empty()) {
            std::ostringstream name;
            name << "sigma_" << sigma;
            c.out_dir = config.out_dir / name.str();
        }
        out.push_back({sigma, run_sweep(c)});
    }
    return out;
}

std::vector<GateRow> run_gate_table(const ExperimentConfig &config) {
    std::vector<GateRow> rows;
    for (bool timedep : {true, false}) {
        for (Gate g : {Gate::kToffoli, Gate::kFredkin}) {
            ExperimentConfig c = config;
            c.source = Source::kGate;
            c.gate = g;
            c.family = timedep ? Family::kGateTimeDep : Family::kGateStatic;
            c.n = 3;
            if (!config.out_dir.empty()) {
                c.out_dir = config.out_dir / (to_string(g) + (timedep ? "_timedep" : "_static"));
            }
            rows.push_back({g, timedep, run_sweep(c)});
        }
    }
    return rows;
}

bool known_figure_tag(const std::string &tag) {
    return std::find(kFigureTags.begin(), kFigureTags.end(), tag) != kFigureTags.end();
}

fs::path emit_plot_data(const PlotSource &source, const std::string &tag, const fs::path &dir) {
    if (!known_figure_tag(tag)) {
        throw InputError("unknown figure tag '" + tag + "'");
    }
    const fs::path path = dir / (tag + ".csv");
    std::ofstream f = open_csv(path);
    if (tag == "fig2") {
        f << "index,label,normalized,is_true_link\n";
        if (source.single && source.single->report) {
            const TomographyReport &r = *source.single->report;
            for (Eigen::Index i = 1; i < r.profile.normalized.size(); ++i) {
                const auto idx = static_cast<std::size_t>(i);
                f << i << ',' << basis_label(r.n, idx) << ',' << r.profile.normalized(i) << ','
                  << (r.truth_links.count(idx) ? 1 : 0) << '\n';
            }
        }
    } else if (tag == "fig3" || tag == "fig5") {
        f << "structure,n,observed,realizations,failures,f_t_mean,f_t_std,f_tprime_mean,f_tprime_std,f_local_mean,"
             "f_local_std\n";
        for (const auto &[name, res] : source.structures) {
            int n = 0;
            std::size_t n_obs = 0;
            for (const auto &o : res.realizations) {
                if (o.report) {
                    n = o.report->n;
                    n_obs = o.report->observed.size();
                    break;
                }
            }
            f << name << ',' << n << ',' << n_obs << ',' << res.realizations.size() << ',' << res.failures() << ','
              << res.f_t.mean << ',' << res.f_t.std << ',' << res.f_tprime.mean << ',' << res.f_tprime.std << ','
              << res.f_local.mean << ',' << res.f_local.std << '\n';
        }
    } else if (tag == "fig6") {
        f << "sigma,f_t_mean,f_t_std,f_local_mean,f_local_std\n";
        for (const auto &p : source.noise) {
            f << p.sigma << ',' << p.result.f_t.mean << ',' << p.result.f_t.std << ',' << p.result.f_local.mean << ','
              << p.result.f_local.std << '\n';
        }
    } else if (tag == "fig7" || tag == "fig8") {
        f << 't';
        if (source.single && source.single->prediction) {
            const RunArtifacts &a = *source.single;
            const int n = a.spec.n;
            LinkSet shown = true_link_set(a.spec);
            if (a.report) {
                shown.insert(a.report->predicted_links.begin(), a.report->predicted_links.end());
            }
            if (n == 1) {
                shown = {1, 2, 3};
            }
            for (std::size_t i : shown) {
                const std::string l = lower(basis_label(n, i));
                f << ",c_" << l << "_pred,c_" << l << "_true";
            }
            f << '\n';
            const TimeGrid &g = a.prediction->grid;
            for (int j = 0; j < g.n_samples; ++j) {
                f << g.time(j);
                for (std::size_t i : shown) {
                    const auto r = static_cast<Eigen::Index>(i);
                    f << ',' << a.prediction->mean_coefficients(r, j) << ',' << a.true_coefficients(r, j);
                }
                f << '\n';
            }
        } else {
            f << '\n';
        }
    } else {
        f << "gate,timedep,realizations,failures,f_t_mean,f_t_std\n";
        for (const auto &row : source.gates) {
            f << to_string(row.gate) << ',' << (row.timedep ? 1 : 0) << ',' << row.result.realizations.size() << ','
              << row.result.failures() << ',' << row.result.f_t.mean << ',' << row.result.f_t.std << '\n';
        }
    }
    return path;
}

}  // namespace henntomo

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


#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "henntomo/error.hpp"
#include "henntomo/harness.hpp"

namespace fs = std::filesystem;
using namespace henntomo;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = "out";
    std::optional<int> realizations;
    std::optional<int> threads;
    std::string figure;
};

Json raw_config(const Options &o) {
    Json j = o.config.empty() ? Json::object() : read_json(o.config);
    if (o.seed) j["seed"] = *o.seed;
    if (o.realizations) j["realizations"] = *o.realizations;
    if (o.threads) j["threads"] = *o.threads;
    j["out"] = o.out;
    return j;
}

std::vector<double> sigmas_of(const Json &j) {
    return j.value("sigmas", std::vector<double>{0.0, 0.02, 0.04, 0.06});
}

void print_sweep(const std::string &label, const SweepResult &r) {
    std::printf("%s: F_t %.4f +- %.4f  F_t' %.4f +- %.4f  F_o' %.4f +- %.4f  (%d failed of %zu)\n", label.c_str(),
                r.f_t.mean, r.f_t.std, r.f_tprime.mean, r.f_tprime.std, r.f_local.mean, r.f_local.std, r.failures(),
                r.realizations.size());
}

void print_report(const TomographyReport &r) {
    std::printf("F_t %.4f", r.f_t);
    if (r.f_tprime) std::printf("  F_t' %.4f", *r.f_tprime);
    if (r.f_local) std::printf("  F_o' %.4f", *r.f_local);
    std::printf("  predicted %zu links, true %zu\n", r.predicted_links.size(), r.truth_links.size());
}

RunArtifacts stage_run(const Options &o, Stage stage) {
    const ExperimentConfig c = config_from_json(raw_config(o));
    RunArtifacts art = run_pipeline(c, c.seed, stage);
    persist_artifacts(c.out_dir, art, config_hash(c));
    write_json(c.out_dir / "config.json", config_to_json(c), config_hash(c));
    return art;
}

// Structures compared in the fidelity-vs-structure figures.
std::vector<std::pair<std::string, Json>> structures_for(const std::string &tag, const Json &base) {
    std::vector<std::pair<std::string, Json>> out;
    const std::vector<int> sizes = base.value("sizes", std::vector<int>{3, 4});
    for (int n : sizes) {
        if (tag == "fig3") {
            for (const char *topo : {"chain", "cyclic", "tree"}) {
                Json j = base;
                j["source"] = "generated";
                j["family"] = "two_body";
                j["topology"] = topo;
                j["n"] = n;
                out.emplace_back(std::string(topo) + "_n" + std::to_string(n), j);
            }
        } else {
            for (int n_obs = 1; n_obs <= std::min(2, n - 1); ++n_obs) {
                Json j = base;
                j["source"] = "generated";
                j["family"] = "long_range";
                j["n"] = n;
                std::vector<int> obs;
                for (int k = 0; k < n_obs; ++k) obs.push_back(k);
                j["observed"] = obs;
                out.emplace_back("long_range_n" + std::to_string(n) + "_obs" + std::to_string(n_obs), j);
            }
        }
    }
    return out;
}

int plotdata(const Options &o) {
    if (!known_figure_tag(o.figure)) {
        throw InputError("unknown figure tag '" + o.figure + "'");
    }
    Json base = raw_config(o);
    PlotSource src;
    const std::string &tag = o.figure;
    if (tag == "fig2" || tag == "fig7" || tag == "fig8") {
        if (tag == "fig7" && !base.contains("source")) base["source"] = "one_spin";
        if (tag == "fig8" && !base.contains("source")) base["source"] = "chain3";
        const ExperimentConfig c = config_from_json(base);
        RunArtifacts art = run_pipeline(c, c.seed);
        persist_artifacts(c.out_dir, art, config_hash(c));
        print_report(*art.report);
        src.single = std::move(art);
    } else if (tag == "fig3" || tag == "fig5") {
        for (auto &[name, j] : structures_for(tag, base)) {
            j["out"] = (fs::path(o.out) / name).string();
            SweepResult r = run_sweep(config_from_json(j));
            print_sweep(name, r);
            src.structures.emplace_back(name, std::move(r));
        }
    } else if (tag == "fig6") {
        if (!base.contains("n")) base["n"] = 4;
        src.noise = run_noise_sweep(config_from_json(base), sigmas_of(base));
        for (const auto &p : src.noise) print_sweep("sigma " + std::to_string(p.sigma), p.result);
    } else {
        src.gates = run_gate_table(config_from_json(base));
        for (const auto &g : src.gates) print_sweep(to_string(g.gate) + (g.timedep ? " timedep" : " static"), g.result);
    }
    std::cout << emit_plot_data(src, tag, o.out).string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tomography of time-dependent spin networks with a Heisenberg neural network"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&o](CLI::App *sub) {
        sub->add_option("--config", o.config, "Experiment config JSON");
        sub->add_option("--seed", o.seed, "Master seed");
        sub->add_option("--out", o.out, "Output directory")->capture_default_str();
        sub->add_option("--realizations", o.realizations, "Number of realizations");
        sub->add_option("--threads", o.threads, "Worker threads for sweeps");
        sub->add_option("--figure", o.figure, "Figure tag for plotdata");
    };
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "Write the Hamiltonian spec"},
        {"simulate", "Simulate local measurements"},
        {"reconstruct", "Reconstruct Heisenberg-picture observables"},
        {"train", "Train the network and convert its prediction"},
        {"tomo", "Run the full pipeline once and write a report"},
        {"sweep", "Run seeded realizations and aggregate fidelities"},
        {"gates", "Toffoli and Fredkin fidelity table"},
        {"noise", "Fidelity versus measurement noise"},
        {"plotdata", "Run the experiment behind a figure and write its CSV"},
    };
    for (const auto &[name, help] : commands) {
        add_common(app.add_subcommand(name, help));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "gen") {
            stage_run(o, Stage::kGenerate);
        } else if (cmd == "simulate") {
            stage_run(o, Stage::kSimulate);
        } else if (cmd == "reconstruct") {
            const RunArtifacts a = stage_run(o, Stage::kReconstruct);
            std::printf("relative residual %.3e  condition %.3e\n", a.reconstruction.relative_residual,
                        a.reconstruction.condition_estimate);
        } else if (cmd == "train") {
            const RunArtifacts a = stage_run(o, Stage::kTrain);
            std::printf("best loss %.6e at epoch %d\n", a.prediction->runs.front().best_loss,
                        a.prediction->runs.front().best_epoch);
        } else if (cmd == "tomo") {
            const ExperimentConfig c = config_from_json(raw_config(o));
            print_report(run_single(c));
        } else if (cmd == "sweep") {
            const ExperimentConfig c = config_from_json(raw_config(o));
            print_sweep(c.name, run_sweep(c));
        } else if (cmd == "gates") {
            Json base = raw_config(o);
            base["source"] = "gate";
            PlotSource src;
            src.gates = run_gate_table(config_from_json(base));
            for (const auto &g : src.gates) {
                print_sweep(to_string(g.gate) + (g.timedep ? " timedep" : " static"), g.result);
            }
            emit_plot_data(src, "table1", o.out);
        } else if (cmd == "noise") {
            const Json base = raw_config(o);
            PlotSource src;
            src.noise = run_noise_sweep(config_from_json(base), sigmas_of(base));
            for (const auto &p : src.noise) {
                print_sweep("sigma " + std::to_string(p.sigma), p.result);
            }
            emit_plot_data(src, "fig6", o.out);
        } else {
            return plotdata(o);
        }
        return 0;
    } catch (const NumericError &e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

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


#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "henntomo/dynamics.hpp"
#include "henntomo/henn.hpp"
#include "henntomo/io.hpp"
#include "henntomo/spin_models.hpp"
#include "henntomo/tomography.hpp"

namespace henntomo {

/// Where the Hamiltonian of an experiment comes from.
enum class Source {
    kGenerated,  // family + topology + n
    kOneSpin,    // sigma_x sin t
    kChain3,     // three-spin chain with every coupling driven by sin t
    kGate,       // Toffoli / Fredkin, static or time-dependent
    kSpecFile,   // spec JSON on disk
};

std::string to_string(Source source);
Source parse_source(const std::string &name);

struct ExperimentConfig {
    std::string name = "experiment";
    Source source = Source::kGenerated;
    Family family = Family::kTwoBody;
    TopologyTag topology = TopologyTag::kCyclic;
    Gate gate = Gate::kToffoli;
    std::string spec_file;
    int n = 3;
    std::vector<int> observed = {0};
    /// 0 selects the default for n.
    int state_count = 0;
    TimeGrid grid;
    DerivativeMode derivative_mode = DerivativeMode::kExact;
    double noise_sigma = 0.0;
    double threshold = 0.10;
    TrainingConfig training;
    int realizations = 10;
    int rounds = 1;
    int convert_substeps = 10;
    std::uint64_t seed = 1;
    int threads = 1;
    std::filesystem::path out_dir;

    /// Throws InputError on any inconsistency.
    void validate() const;
    /// 4^n for n <= 2; 100, 300 and 1100 random states for n = 3, 4, 5.
    static int default_state_count(int n);
    int effective_state_count() const;
};

/// Parses a config JSON. Missing fields keep their defaults; training and grid defaults follow n
/// and the source (gates run on [0, 1]). Throws InputError.
ExperimentConfig config_from_json(const Json &j);
ExperimentConfig load_config(const std::filesystem::path &path);
Json config_to_json(const ExperimentConfig &config);
/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string config_hash(const ExperimentConfig &config);

/// The Hamiltonian an experiment uses for realization seed `seed`.
HamiltonianSpec make_spec(const ExperimentConfig &config, std::uint64_t seed);

/// Intermediate products of one realization, filled as far as the requested stage.
struct RunArtifacts {
    std::uint64_t seed = 0;
    TimeGrid grid;
    HamiltonianSpec spec;
    InitialStateEnsemble ensemble;
    ObservationSet observations;
    HeisenbergReconstruction reconstruction;
    std::optional<EnsemblePrediction> prediction;
    RMatrix true_coefficients;
    std::optional<TomographyReport> report;
    double seconds = 0.0;
};

enum class Stage { kGenerate, kSimulate, kReconstruct, kTrain, kScore };

/// Runs the pipeline for realization seed `seed` up to and including `last`. Errors keep their
/// kind and gain the stage name and seed in the message.
RunArtifacts run_pipeline(const ExperimentConfig &config, std::uint64_t seed, Stage last = Stage::kScore);

/// Writes whatever `art` holds to `dir`.
void persist_artifacts(const std::filesystem::path &dir, const RunArtifacts &art, const std::string &hash);

/// Full pipeline with the master seed; persists under out_dir when it is set.
TomographyReport run_single(const ExperimentConfig &config);

struct RealizationOutcome {
    int index = 0;
    std::uint64_t seed = 0;
    std::optional<TomographyReport> report;
    std::string error;
    double seconds = 0.0;
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;
    int count = 0;
};

/// Mean and population standard deviation; count 0 when `values` is empty.
MetricSummary summarize(const std::vector<double> &values);

struct SweepResult {
    std::vector<RealizationOutcome> realizations;
    MetricSummary f_t;
    MetricSummary f_tprime;
    MetricSummary f_local;
    double wall_seconds = 0.0;

    int failures() const;
};

/// Seed of realization r: derive_seed(master, {r}).
std::uint64_t realization_seed(std::uint64_t master, int index);

/// Independent realizations on a pool of config.threads workers. Failures are recorded per
/// realization. Persists per-realization reports and sweep.json under out_dir when set.
SweepResult run_sweep(const ExperimentConfig &config);

/// Recomputes the aggregates from the per-realization reports.
void aggregate(SweepResult &result);

Json sweep_to_json(const SweepResult &result);

struct NoisePoint {
    double sigma = 0.0;
    SweepResult result;
};

/// One sweep per sigma. Derivatives are always finite differences of the (noisy) values, so
/// sigma = 0 is scored under the same estimator.
std::vector<NoisePoint> run_noise_sweep(const ExperimentConfig &config, const std::vector<double> &sigmas);

struct GateRow {
    Gate gate = Gate::kToffoli;
    bool timedep = false;
    SweepResult result;
};

/// Toffoli and Fredkin, time-dependent and static, observing the third spin.
std::vector<GateRow> run_gate_table(const ExperimentConfig &config);

/// Everything a figure may need; fields not used by a tag may stay empty.
struct PlotSource {
    std::optional<RunArtifacts> single;
    std::vector<std::pair<std::string, SweepResult>> structures;
    std::vector<NoisePoint> noise;
    std::vector<GateRow> gates;
};

/// Tags: fig2, fig3, fig5, fig6, fig7, fig8, table1. Writes <dir>/<tag>.csv and returns its path.
/// Throws InputError for an unknown tag.
std::filesystem::path emit_plot_data(const PlotSource &source, const std::string &figure_tag,
                                     const std::filesystem::path &dir);

bool known_figure_tag(const std::string &tag);

}  // namespace henntomo

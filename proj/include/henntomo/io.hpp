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


// JSON and CSV persistence for specs, observations, operator series, network parameters and
// reports. Every writer takes the hash of the configuration that produced the artifact.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "henntomo/dynamics.hpp"
#include "henntomo/henn.hpp"
#include "henntomo/spin_models.hpp"
#include "henntomo/tomography.hpp"

namespace henntomo {

using Json = nlohmann::json;

/// Sparse coefficient maps keyed by the decimal canonical index, plus a parallel label map.
Json spec_to_json(const HamiltonianSpec &spec);
/// Throws InputError on malformed input.
HamiltonianSpec spec_from_json(const Json &j);

Json grid_to_json(const TimeGrid &grid);
TimeGrid grid_from_json(const Json &j, const TimeGrid &defaults = {});

Json params_to_json(const MlpParameters &params);
MlpParameters params_from_json(const Json &j);

Json training_to_json(const TrainingConfig &cfg);
TrainingConfig training_from_json(const Json &j, const TrainingConfig &defaults);

Json report_to_json(const TomographyReport &report);

/// Header describing an observation set; the values live in the companion CSV.
Json observations_header(const ObservationSet &obs);
/// One row per (state, observable) with the samples as columns. Derivatives go to a sibling file
/// with "_derivatives" appended to the stem.
void write_observations_csv(const std::filesystem::path &path, const ObservationSet &obs);

/// Columns: t followed by one coefficient column per Pauli label.
void write_coefficients_csv(const std::filesystem::path &path, const TimeGrid &grid, const RMatrix &coefficients);

/// One row per sample: index, t, then (re, im) of every matrix entry in row-major order.
void write_operator_series_csv(const std::filesystem::path &path, const OperatorSeries &series);

/// Writes each series as <stem>_<label>.csv.
void write_operator_series(const std::filesystem::path &dir, const std::string &stem,
                           const std::vector<OperatorSeries> &series);

/// Columns: epoch, loss.
void write_loss_csv(const std::filesystem::path &path, const std::vector<double> &loss);

/// Pretty-printed JSON with "config_hash" attached at the top level.
void write_json(const std::filesystem::path &path, Json j, const std::string &config_hash);
Json read_json(const std::filesystem::path &path);

}  // namespace henntomo

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

// Heisenberg neural network: an MLP t -> H^H(t) trained so that i<psi|[H^H, A^H]|psi> matches the
// measured derivatives d<A>/dt.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "henntomo/dynamics.hpp"
#include "henntomo/linalg.hpp"

namespace henntomo {

/// Affine input map x = scale * t + offset.
struct TimeScale {
    double scale = 1.0;
    double offset = 0.0;

    double operator()(double t) const { return scale * t + offset; }
    /// Maps [t_start, t_end] onto [-1, 1].
    static TimeScale unit_interval(double t_start, double t_end);
};

/// Fully connected tanh network with a linear output layer. weights[l] maps layer l to layer l+1
/// and has shape layer_sizes[l+1] x layer_sizes[l]. The output of width 4^n is a RealEncoding.
struct MlpParameters {
    std::vector<int> layer_sizes;
    std::vector<RMatrix> weights;
    std::vector<RVector> biases;
    TimeScale time_scale;
    std::uint64_t seed = 0;

    int num_spins() const;
    std::size_t parameter_count() const;
    /// Same shapes, all zeros (used for gradients and optimizer moments).
    MlpParameters zeros_like() const;
    /// Weights then biases, layer by layer, row-major within each weight matrix.
    RVector flatten() const;
    void assign(const RVector &flat);
    bool all_finite() const;
};

/// Uniform fan-in initialization: weights and biases of layer l drawn from U(-b, b) with
/// b = gain / sqrt(fan_in).
MlpParameters init_parameters(const std::vector<int> &layer_sizes, const TimeScale &scale, std::uint64_t seed,
                              double gain = 1.0);

enum class Optimizer { kAdam, kSgd };

std::string to_string(Optimizer opt);
Optimizer parse_optimizer(const std::string &name);

struct TrainingConfig {
    double learning_rate = 1e-3;
    int epochs = 5000;
    Optimizer optimizer = Optimizer::kAdam;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    bool full_batch = true;
    /// Time samples per step when full_batch is false.
    int batch_times = 10;
    std::vector<int> hidden_layers = {200, 200};
    double init_gain = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    /// 5000 epochs for n <= 3, 10000 above.
    static TrainingConfig defaults_for(int n);
};

/// Everything the loss needs, reduced to one quadratic form per time sample.
///
/// For state s, observable k and time t_j the prediction is linear in the encoded output h_j:
/// pred = tr(H^H Q) with Q = i[A^H_k(t_j), |psi_s><psi_s|], i.e. pred = phi . h_j. The context
/// stores G_j = sum phi phi^T, b_j = sum y phi and c_j = sum y^2 so the mean squared error is
/// (1/N) sum_j (h_j^T G_j h_j - 2 b_j^T h_j + c_j).
class LossContext {
   public:
    LossContext() = default;

    /// targets(s, k, j) are the measured d<A_k>/dt; operators[k].matrices[j] is A^H_k(t_j).
    static LossContext build(const InitialStateEnsemble &ensemble, const std::vector<OperatorSeries> &operators,
                             const Array3 &targets);

    int num_spins() const { return n_; }
    const TimeGrid &grid() const { return grid_; }
    std::size_t num_times() const { return gram_.size(); }
    std::size_t num_observations() const { return n_observations_; }

    /// Mean squared residual for encoded outputs (one column per time sample).
    double loss(const RMatrix &outputs) const;
    /// Loss and d loss / d outputs.
    double loss_and_output_grad(const RMatrix &outputs, RMatrix &grad) const;
    /// Restricted to a subset of time samples (mini-batches); normalized by that subset's size.
    double loss_and_output_grad(const RMatrix &outputs, const std::vector<std::size_t> &times, RMatrix &grad) const;

   private:
    int n_ = 0;
    TimeGrid grid_;
    std::size_t n_observations_ = 0;
    std::size_t per_time_ = 0;
    std::vector<RMatrix> gram_;
    std::vector<RVector> proj_;
    std::vector<double> sq_;
};

/// Network outputs (4^n x times.size()) at the given times.
RMatrix mlp_outputs(const MlpParameters &params, const std::vector<double> &times);

/// Decoded H^H(t). Throws NumericError if a parameter is not finite.
CMatrix mlp_forward(const MlpParameters &params, double t);

double henn_loss(const MlpParameters &params, const LossContext &ctx);

/// Loss with H^H(t_j) supplied directly instead of by a network.
double henn_loss_at(const LossContext &ctx, const std::vector<CMatrix> &heisenberg_hamiltonians);

/// Exact gradient of henn_loss with respect to every weight and bias.
MlpParameters henn_grad(const MlpParameters &params, const LossContext &ctx);

/// Loss and gradient in one pass.
double henn_loss_and_grad(const MlpParameters &params, const LossContext &ctx, MlpParameters &grad);

/// Removes the identity component from the decoded output by shifting the diagonal rows of the
/// output layer to zero mean. The loss is unchanged.
void project_out_identity(MlpParameters &params);

struct TrainResult {
    MlpParameters params;
    std::vector<double> loss_history;
    double best_loss = 0.0;
    int best_epoch = 0;
};

/// Full-batch (default) training from a seeded initialization. Returns the lowest-loss parameters
/// seen, with the identity gauge fixed to zero. Throws NumericError on a non-finite loss.
TrainResult train(const LossContext &ctx, const TrainingConfig &config);

/// H^H on every sample of `grid`.
OperatorSeries predict_heisenberg(const MlpParameters &params, const TimeGrid &grid);

/// Schrodinger-picture H(t) on `grid`, converting with the network evaluated at sub-step
/// midpoints.
PictureConversion predict_schrodinger(const MlpParameters &params, const TimeGrid &grid, int substeps = 10);

/// Pauli coefficients of every matrix in a series: 4^n x n_samples.
RMatrix coefficient_series(const OperatorSeries &series);

struct EnsemblePrediction {
    TimeGrid grid;
    /// Mean Schrodinger-picture coefficients over rounds, 4^n x n_samples.
    RMatrix mean_coefficients;
    /// Per-coefficient variance over rounds at each sample.
    RMatrix variance;
    /// Time-averaged variance for each basis string.
    RVector basis_variance;
    std::vector<TrainResult> runs;
};

/// Trains `rounds` networks (round 0 uses config.seed, round r > 0 a seed derived from it),
/// converts each to the Schrodinger picture on `grid` and averages the coefficient series.
EnsemblePrediction ensemble_train(const LossContext &ctx, const TrainingConfig &config, int rounds,
                                  const TimeGrid &grid, int substeps = 10);

}  // namespace henntomo

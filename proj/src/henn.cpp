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

#include "henntomo/henn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "henntomo/error.hpp"
#include "henntomo/rng.hpp"

namespace henntomo {

namespace {

struct ForwardPass {
    // activations[0] is the scaled input row, activations.back() the linear output.
    std::vector<RMatrix> activations;
};

ForwardPass forward(const MlpParameters &p, const std::vector<double> &times) {
    const auto n_t = static_cast<Eigen::Index>(times.size());
    ForwardPass fp;
    fp.activations.reserve(p.weights.size() + 1);
    RMatrix x(1, n_t);
    for (Eigen::Index j = 0; j < n_t; ++j) {
        x(0, j) = p.time_scale(times[static_cast<std::size_t>(j)]);
    }
    fp.activations.push_back(std::move(x));
    const std::size_t n_layers = p.weights.size();
    for (std::size_t l = 0; l < n_layers; ++l) {
        RMatrix z = p.weights[l] * fp.activations.back();
        z.colwise() += p.biases[l];
        if (l + 1 < n_layers) {
            z = z.array().tanh().matrix();
        }
        fp.activations.push_back(std::move(z));
    }
    return fp;
}

void backward(const MlpParameters &p, const ForwardPass &fp, RMatrix delta, MlpParameters &grad) {
    for (std::size_t l = p.weights.size(); l-- > 0;) {
        const RMatrix &a_in = fp.activations[l];
        grad.weights[l].noalias() = delta * a_in.transpose();
        grad.biases[l] = delta.rowwise().sum();
        if (l > 0) {
            RMatrix back = p.weights[l].transpose() * delta;
            delta = back.cwiseProduct((1.0 - a_in.array().square()).matrix());
        }
    }
}

std::vector<double> training_times(const LossContext &ctx) { return ctx.grid().times(); }

// Feature vector phi with tr(H Q) = phi . encode(H) for Q = i(chi psi^dagger - psi chi^dagger).
void commutator_features(const Eigen::Ref<const CVector> &psi, const Eigen::Ref<const CVector> &chi,
                         Eigen::Ref<RVector> out) {
    const Eigen::Index dim = psi.size();
    Eigen::Index k = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
        // Q_rr = -2 Im(chi_r conj(psi_r))
        out(k++) = -2.0 * (chi(r) * std::conj(psi(r))).imag();
        for (Eigen::Index c = r + 1; c < dim; ++c) {
            const Complex q = kI * (chi(r) * std::conj(psi(c)) - psi(r) * std::conj(chi(c)));
            out(k++) = 2.0 * q.real();
            out(k++) = 2.0 * q.imag();
        }
    }
}

}  // namespace

TimeScale TimeScale::unit_interval(double t_start, double t_end) {
    const double scale = 2.0 / (t_end - t_start);
    return {scale, -1.0 - scale * t_start};
}

int MlpParameters::num_spins() const {
    const auto out = static_cast<std::size_t>(layer_sizes.back());
    for (int n = 1; n <= kMaxSpins; ++n) {
        if (basis_size(n) == out) {
            return n;
        }
    }
    throw SizeError("network output width " + std::to_string(out) + " is not 4^n");
}

std::size_t MlpParameters::parameter_count() const {
    std::size_t count = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        count += static_cast<std::size_t>(weights[l].size() + biases[l].size());
    }
    return count;
}

MlpParameters MlpParameters::zeros_like() const {
    MlpParameters z = *this;
    for (auto &w : z.weights) {
        w.setZero();
    }
    for (auto &b : z.biases) {
        b.setZero();
    }
    return z;
}

RVector MlpParameters::flatten() const {
    RVector flat(static_cast<Eigen::Index>(parameter_count()));
    Eigen::Index k = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        for (Eigen::Index r = 0; r < weights[l].rows(); ++r) {
            for (Eigen::Index c = 0; c < weights[l].cols(); ++c) {
                flat(k++) = weights[l](r, c);
            }
        }
        flat.segment(k, biases[l].size()) = biases[l];
        k += biases[l].size();
    }
    return flat;
}

void MlpParameters::assign(const RVector &flat) {
    if (static_cast<std::size_t>(flat.size()) != parameter_count()) {
        throw SizeError("flat parameter vector has the wrong length");
    }
    Eigen::Index k = 0;
    for (std::size_t l = 0; l < weights.size(); ++l) {
        for (Eigen::Index r = 0; r < weights[l].rows(); ++r) {
            for (Eigen::Index c = 0; c < weights[l].cols(); ++c) {
                weights[l](r, c) = flat(k++);
            }
        }
        biases[l] = flat.segment(k, biases[l].size());
        k += biases[l].size();
    }
}

bool MlpParameters::all_finite() const {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (!weights[l].allFinite() || !biases[l].allFinite()) {
            return false;
        }
    }
    return true;
}

MlpParameters init_parameters(const std::vector<int> &layer_sizes, const TimeScale &scale, std::uint64_t seed,
                              double gain) {
    if (layer_sizes.size() < 2 || layer_sizes.front() != 1) {
        throw SizeError("network needs input width 1 and at least one layer");
    }
    MlpParameters p;
    p.layer_sizes = layer_sizes;
    p.time_scale = scale;
    p.seed = seed;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        if (fan_in < 1 || fan_out < 1) {
            throw SizeError("layer widths must be positive");
        }
        const double bound = gain / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> u(-bound, bound);
        RMatrix w(fan_out, fan_in);
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                w(r, c) = u(rng);
            }
        }
        RVector b(fan_out);
        for (Eigen::Index r = 0; r < b.size(); ++r) {
            b(r) = u(rng);
        }
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    p.num_spins();
    return p;
}

std::string to_string(Optimizer opt) { return opt == Optimizer::kAdam ? "adam" : "sgd"; }

Optimizer parse_optimizer(const std::string &name) {
    if (name == "adam") return Optimizer::kAdam;
    if (name == "sgd") return Optimizer::kSgd;
    throw InputError("unknown optimizer '" + name + "'");
}

void TrainingConfig::validate() const {
    if (!(learning_rate > 0.0)) {
        throw InputError("learning_rate must be positive");
    }
    if (epochs < 1) {
        throw InputError("epochs must be at least 1");
    }
    if (!full_batch && batch_times < 1) {
        throw InputError("batch_times must be at least 1");
    }
    for (int h : hidden_layers) {
        if (h < 1) {
            throw InputError("hidden layer widths must be positive");
        }
    }
}

TrainingConfig TrainingConfig::defaults_for(int n) {
    TrainingConfig c;
    c.epochs = n <= 3 ? 5000 : 10000;
    return c;
}

LossContext LossContext::build(const InitialStateEnsemble &ensemble, const std::vector<OperatorSeries> &operators,
                               const Array3 &targets) {
    const int n = ensemble.n;
    check_spin_count(n);
    if (operators.empty()) {
        throw ContractError("loss context needs at least one observable");
    }
    const auto n_states = static_cast<std::size_t>(ensemble.count());
    const std::size_t n_obs = operators.size();
    const auto n_t = static_cast<std::size_t>(operators.front().grid.n_samples);
    if (targets.dim0() != n_states || targets.dim1() != n_obs || targets.dim2() != n_t) {
        throw ContractError("target derivative array shape does not match states x observables x times");
    }
    for (const auto &op : operators) {
        if (op.matrices.size() != n_t) {
            throw ContractError("operator series lengths differ");
        }
    }

    LossContext ctx;
    ctx.n_ = n;
    ctx.grid_ = operators.front().grid;
    ctx.per_time_ = n_states * n_obs;
    ctx.n_observations_ = ctx.per_time_ * n_t;
    const auto n_basis = static_cast<Eigen::Index>(basis_size(n));
    const CMatrix psi = ensemble.as_matrix();

    RMatrix features(n_basis, static_cast<Eigen::Index>(ctx.per_time_));
    RVector y(static_cast<Eigen::Index>(ctx.per_time_));
    ctx.gram_.reserve(n_t);
    ctx.proj_.reserve(n_t);
    ctx.sq_.reserve(n_t);
    for (std::size_t j = 0; j < n_t; ++j) {
        for (std::size_t k = 0; k < n_obs; ++k) {
            const CMatrix &a = operators[k].matrices[j];
            if (hermiticity_error(a) > 1e-8) {
                throw ContractError("A^H matrix is not Hermitian");
            }
            const CMatrix chi = a * psi;
            for (std::size_t s = 0; s < n_states; ++s) {
                const auto col = static_cast<Eigen::Index>(s * n_obs + k);
                commutator_features(psi.col(static_cast<Eigen::Index>(s)), chi.col(static_cast<Eigen::Index>(s)),
                                    features.col(col));
                y(col) = targets(s, k, j);
            }
        }
        RMatrix gram = RMatrix::Zero(n_basis, n_basis);
        gram.selfadjointView<Eigen::Lower>().rankUpdate(features);
        gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
        ctx.gram_.push_back(std::move(gram));
        ctx.proj_.push_back(features * y);
        ctx.sq_.push_back(y.squaredNorm());
    }
    return ctx;
}

double LossContext::loss(const RMatrix &outputs) const {
    if (static_cast<std::size_t>(outputs.cols()) != gram_.size() ||
        (!gram_.empty() && outputs.rows() != gram_.front().rows())) {
        throw ContractError("outputs must be 4^n x training times");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < gram_.size(); ++j) {
        const auto h = outputs.col(static_cast<Eigen::Index>(j));
        total += h.dot(gram_[j] * h) - 2.0 * proj_[j].dot(h) + sq_[j];
    }
    return total / static_cast<double>(n_observations_);
}

double LossContext::loss_and_output_grad(const RMatrix &outputs, RMatrix &grad) const {
    std::vector<std::size_t> all(gram_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return loss_and_output_grad(outputs, all, grad);
}

double LossContext::loss_and_output_grad(const RMatrix &outputs, const std::vector<std::size_t> &times,
                                         RMatrix &grad) const {
    if (static_cast<std::size_t>(outputs.cols()) != gram_.size()) {
        throw ContractError("outputs must have one column per training time");
    }
    grad = RMatrix::Zero(outputs.rows(), outputs.cols());
    const double norm = static_cast<double>(per_time_ * times.size());
    double total = 0.0;
    RVector gh;
    for (std::size_t j : times) {
        const auto col = static_cast<Eigen::Index>(j);
        const auto h = outputs.col(col);
        gh.noalias() = gram_[j] * h;
        total += h.dot(gh) - 2.0 * proj_[j].dot(h) + sq_[j];
        grad.col(col) = (2.0 / norm) * (gh - proj_[j]);
    }
    return total / norm;
}

RMatrix mlp_outputs(const MlpParameters &params, const std::vector<double> &times) {
    return forward(params, times).activations.back();
}

CMatrix mlp_forward(const MlpParameters &params, double t) {
    if (!params.all_finite()) {
        throw NumericError("network parameters contain non-finite values");
    }
    const RMatrix out = mlp_outputs(params, {t});
    return decode(RealEncoding{params.num_spins(), out.col(0)});
}

double henn_loss(const MlpParameters &params, const LossContext &ctx) {
    return ctx.loss(mlp_outputs(params, training_times(ctx)));
}

double henn_loss_at(const LossContext &ctx, const std::vector<CMatrix> &heisenberg_hamiltonians) {
    if (heisenberg_hamiltonians.size() != ctx.num_times()) {
        throw ContractError("need one Hamiltonian per training time");
    }
    RMatrix outputs(static_cast<Eigen::Index>(basis_size(ctx.num_spins())),
                    static_cast<Eigen::Index>(heisenberg_hamiltonians.size()));
    for (std::size_t j = 0; j < heisenberg_hamiltonians.size(); ++j) {
        outputs.col(static_cast<Eigen::Index>(j)) = encode(heisenberg_hamiltonians[j]).values;
    }
    return ctx.loss(outputs);
}

double henn_loss_and_grad(const MlpParameters &params, const LossContext &ctx, MlpParameters &grad) {
    const ForwardPass fp = forward(params, training_times(ctx));
    RMatrix delta;
    const double loss = ctx.loss_and_output_grad(fp.activations.back(), delta);
    if (grad.weights.size() != params.weights.size()) {
        grad = params.zeros_like();
    }
    backward(params, fp, std::move(delta), grad);
    return loss;
}

MlpParameters henn_grad(const MlpParameters &params, const LossContext &ctx) {
    MlpParameters grad = params.zeros_like();
    henn_loss_and_grad(params, ctx, grad);
    return grad;
}

void project_out_identity(MlpParameters &params) {
    const int n = params.num_spins();
    const auto dim = hilbert_dim(n);
    RMatrix &w = params.weights.back();
    RVector &b = params.biases.back();
    RVector mean_w = RVector::Zero(w.cols());
    double mean_b = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        const auto slot = static_cast<Eigen::Index>(encoding_diagonal_slot(dim, r));
        mean_w += w.row(slot).transpose();
        mean_b += b(slot);
    }
    mean_w /= static_cast<double>(dim);
    mean_b /= static_cast<double>(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const auto slot = static_cast<Eigen::Index>(encoding_diagonal_slot(dim, r));
        w.row(slot) -= mean_w.transpose();
        b(slot) -= mean_b;
    }
}

TrainResult train(const LossContext &ctx, const TrainingConfig &config) {
    config.validate();
    std::vector<int> sizes{1};
    sizes.insert(sizes.end(), config.hidden_layers.begin(), config.hidden_layers.end());
    sizes.push_back(static_cast<int>(basis_size(ctx.num_spins())));
    const TimeGrid &grid = ctx.grid();
    MlpParameters params =
        init_parameters(sizes, TimeScale::unit_interval(grid.t_start, grid.t_end), config.seed, config.init_gain);

    const std::vector<double> times = training_times(ctx);
    const auto n_params = static_cast<Eigen::Index>(params.parameter_count());
    RVector theta = params.flatten();
    RVector m = RVector::Zero(n_params);
    RVector v = RVector::Zero(n_params);
    MlpParameters grad = params.zeros_like();

    TrainResult result;
    result.loss_history.reserve(static_cast<std::size_t>(config.epochs));
    result.best_loss = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> order(ctx.num_times());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng batch_rng(derive_seed(config.seed, {0xba7c4ULL}));
    long step = 0;

    auto apply_update = [&](const RVector &g) {
        ++step;
        if (config.optimizer == Optimizer::kAdam) {
            m = config.beta1 * m + (1.0 - config.beta1) * g;
            v = config.beta2 * v + (1.0 - config.beta2) * g.cwiseAbs2();
            const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(step));
            theta.array() -= config.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + config.epsilon);
        } else {
            theta -= config.learning_rate * g;
        }
        params.assign(theta);
    };

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        if (config.full_batch) {
            epoch_loss = henn_loss_and_grad(params, ctx, grad);
            if (!std::isfinite(epoch_loss)) {
                throw NumericError("training diverged: non-finite loss at epoch " + std::to_string(epoch));
            }
            if (epoch_loss < result.best_loss) {
                result.best_loss = epoch_loss;
                result.best_epoch = epoch;
                result.params = params;
            }
            apply_update(grad.flatten());
        } else {
            std::shuffle(order.begin(), order.end(), batch_rng);
            const std::size_t batch = static_cast<std::size_t>(config.batch_times);
            std::size_t batches = 0;
            for (std::size_t start = 0; start < order.size(); start += batch) {
                const std::vector<std::size_t> subset(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                      order.begin() + static_cast<std::ptrdiff_t>(
                                                                          std::min(order.size(), start + batch)));
                const ForwardPass fp = forward(params, times);
                RMatrix delta;
                const double l = ctx.loss_and_output_grad(fp.activations.back(), subset, delta);
                if (!std::isfinite(l)) {
                    throw NumericError("training diverged: non-finite loss at epoch " + std::to_string(epoch));
                }
                backward(params, fp, std::move(delta), grad);
                apply_update(grad.flatten());
                epoch_loss += l;
                ++batches;
            }
            epoch_loss /= static_cast<double>(batches);
            if (epoch_loss < result.best_loss) {
                result.best_loss = epoch_loss;
                result.best_epoch = epoch;
                result.params = params;
            }
        }
        result.loss_history.push_back(epoch_loss);
    }
    project_out_identity(result.params);
    return result;
}

OperatorSeries predict_heisenberg(const MlpParameters &params, const TimeGrid &grid) {
    grid.validate();
    const RMatrix out = mlp_outputs(params, grid.times());
    OperatorSeries series{grid, "H^H", {}};
    series.matrices.reserve(static_cast<std::size_t>(grid.n_samples));
    const int n = params.num_spins();
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        series.matrices.push_back(decode(RealEncoding{n, out.col(j)}));
    }
    return series;
}

PictureConversion predict_schrodinger(const MlpParameters &params, const TimeGrid &grid, int substeps) {
    if (!params.all_finite()) {
        throw NumericError("network parameters contain non-finite values");
    }
    const int n = params.num_spins();
    auto at = [&params, n](double t) {
        return decode(RealEncoding{n, mlp_outputs(params, {t}).col(0)});
    };
    return heisenberg_to_schrodinger(at, grid, substeps);
}

RMatrix coefficient_series(const OperatorSeries &series) {
    if (series.matrices.empty()) {
        throw ContractError("empty operator series");
    }
    const int n = spin_count_of(series.matrices.front());
    RMatrix out(static_cast<Eigen::Index>(basis_size(n)), static_cast<Eigen::Index>(series.matrices.size()));
    for (std::size_t j = 0; j < series.matrices.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = decompose(series.matrices[j]).values;
    }
    return out;
}

EnsemblePrediction ensemble_train(const LossContext &ctx, const TrainingConfig &config, int rounds,
                                  const TimeGrid &grid, int substeps) {
    if (rounds < 1) {
        throw InputError("rounds must be at least 1");
    }
    EnsemblePrediction out;
    out.grid = grid;
    std::vector<RMatrix> series;
    for (int r = 0; r < rounds; ++r) {
        TrainingConfig cfg = config;
        cfg.seed = r == 0 ? config.seed : derive_seed(config.seed, {static_cast<std::uint64_t>(r)});
        TrainResult res = train(ctx, cfg);
        series.push_back(coefficient_series(predict_schrodinger(res.params, grid, substeps).schrodinger));
        out.runs.push_back(std::move(res));
    }
    out.mean_coefficients = series.front();
    for (std::size_t r = 1; r < series.size(); ++r) {
        out.mean_coefficients += series[r];
    }
    out.mean_coefficients /= rounds;
    out.variance = RMatrix::Zero(out.mean_coefficients.rows(), out.mean_coefficients.cols());
    for (const RMatrix &c : series) {
        out.variance += (c - out.mean_coefficients).cwiseAbs2();
    }
    out.variance /= rounds;
    out.basis_variance = out.variance.rowwise().mean();
    return out;
}

}  // namespace henntomo

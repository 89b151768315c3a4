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


// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero if any fails.
// Usage: henntomo_acceptance [criterion ...]   (default: all of 1..9)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "henntomo/error.hpp"
#include "henntomo/harness.hpp"
#include "henntomo/rng.hpp"

namespace henntomo {
namespace {

// Pinned tolerances.
constexpr double kOracleTol = 1e-6;
constexpr double kOracleSeconds = 10.0;
constexpr double kGradTol = 1e-5;
constexpr int kGradDraws = 20;
constexpr double kGradSeconds = 30.0;
constexpr double kLossFloor = 1e-10;
constexpr double kOneSpinRmse = 0.1;
constexpr double kOneSpinSeconds = 300.0;
constexpr int kSeeds = 10;
constexpr int kChainMinCorrect = 9;
constexpr double kChainMeanFt = 0.8;
constexpr double kChainSeconds = 3600.0;
constexpr double kCyclicMeanFt = 0.80;
constexpr double kCyclicMeanFtPrime = 0.70;
constexpr double kToffoliTarget = 0.85;
constexpr double kFredkinTarget = 0.92;
constexpr double kGateBand = 0.10;
constexpr double kTimeDepGateFloor = 0.70;
constexpr double kNoiseMaxDrop = 0.15;
const std::vector<double> kNoiseSigmas = {0.0, 0.02, 0.04, 0.06};
constexpr double kPauliTol = 1e-12;
constexpr double kNormTol = 1e-8;
constexpr double kUnitaryTol = 1e-9;
constexpr double kRoundTripTol = 1e-5;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string summary_text(const char *name, const MetricSummary &s) {
    std::ostringstream o;
    o << name << " " << fmt("%.3f", s.mean) << " +- " << fmt("%.3f", s.std) << " (n=" << s.count << ")";
    return o.str();
}

ExperimentConfig config(const Json &j) { return config_from_json(j); }

// 1. Reconstructed Heisenberg observables for H = sigma_x sin t against
//    U = exp(-i(1 - cos t) sigma_x): x^H = x, y^H = cos2a y - sin2a z, z^H = cos2a z + sin2a y.
Outcome one_spin_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const TimeGrid grid;
    const HamiltonianSpec spec = one_spin_sine();
    const InitialStateEnsemble e = gen_initial_states(1, 4, 1);
    const ObservationSet obs =
        measure_expectations(spec, e, observables_for(1, {0}), {0}, grid, DerivativeMode::kExact);
    const HeisenbergReconstruction rec = reconstruct_heisenberg(obs, e);
    const CMatrix x = pauli_matrix(PauliString::from_label("X"));
    const CMatrix y = pauli_matrix(PauliString::from_label("Y"));
    const CMatrix z = pauli_matrix(PauliString::from_label("Z"));
    double err = 0.0;
    for (int j = 0; j < grid.n_samples; ++j) {
        const double a = 1.0 - std::cos(grid.time(j));
        const double c = std::cos(2.0 * a), s = std::sin(2.0 * a);
        const std::vector<CMatrix> expected = {x, c * y - s * z, c * z + s * y};
        for (std::size_t k = 0; k < 3; ++k) {
            err = std::max(err, max_abs_diff(rec.operators[k].matrices[static_cast<std::size_t>(j)], expected[k]));
        }
    }
    const double secs = seconds_since(t0);
    return {err < kOracleTol && secs < kOracleSeconds,
            "max error " + fmt("%.2e", err) + ", " + fmt("%.2f", secs) + " s"};
}

// 2. Analytic gradient against central differences on reduced networks.
Outcome gradient_check() {
    const auto t0 = std::chrono::steady_clock::now();
    const TimeGrid grid{0.0, 5.0, 20, 50};
    double worst = 0.0;
    int draws = 0;
    for (int n = 1; n <= 2; ++n) {
        const HamiltonianSpec spec = n == 1 ? one_spin_sine() : gen_two_body(NetworkTopology::chain(2), 3);
        const int states = static_cast<int>(basis_size(n)) + 2;
        const InitialStateEnsemble e = gen_initial_states(n, states, 5);
        const ObservationSet obs =
            measure_expectations(spec, e, observables_for(n, {0}), {0}, grid, DerivativeMode::kExact);
        const LossContext ctx = LossContext::build(e, reconstruct_heisenberg(obs, e).operators, obs.derivatives);
        for (int d = 0; d < kGradDraws / 2; ++d, ++draws) {
            const MlpParameters p = init_parameters({1, 8, 8, static_cast<int>(basis_size(n))},
                                                    TimeScale::unit_interval(0.0, 5.0), 100 + d);
            const RVector g = henn_grad(p, ctx).flatten();
            const RVector theta = p.flatten();
            MlpParameters q = p;
            for (Eigen::Index i = 0; i < theta.size(); ++i) {
                RVector t = theta;
                t(i) += 1e-5;
                q.assign(t);
                const double lp = henn_loss(q, ctx);
                t(i) -= 2e-5;
                q.assign(t);
                const double fd = (lp - henn_loss(q, ctx)) / 2e-5;
                worst = std::max(worst, std::abs(g(i) - fd) / std::max({std::abs(g(i)), std::abs(fd), 1e-12}));
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst < kGradTol && draws >= kGradDraws && secs < kGradSeconds,
            "worst relative error " + fmt("%.2e", worst) + " over " + std::to_string(draws) + " draws, " +
                fmt("%.2f", secs) + " s"};
}

// 3. Loss at the true Heisenberg-picture Hamiltonian on exact targets.
Outcome loss_floor() {
    const TimeGrid grid;
    const std::vector<std::pair<std::string, HamiltonianSpec>> systems = {
        {"one spin", one_spin_sine()},
        {"chain n=2", gen_two_body(NetworkTopology::chain(2), 1)},
        {"cyclic n=3", gen_two_body(NetworkTopology::cyclic(3), 1)},
        {"three-spin chain", three_spin_chain()},
        {"long-range n=3", gen_long_range(3, 1)},
    };
    double worst = 0.0;
    for (const auto &[name, spec] : systems) {
        const int n = spec.n;
        const InitialStateEnsemble e = gen_initial_states(n, ExperimentConfig::default_state_count(n), 2);
        const ObservationSet obs =
            measure_expectations(spec, e, observables_for(n, {0}), {0}, grid, DerivativeMode::kExact);
        const LossContext ctx = LossContext::build(e, reconstruct_heisenberg(obs, e).operators, obs.derivatives);
        const DenseHamiltonian h(spec);
        const auto u = propagators(h, grid);
        std::vector<CMatrix> hh;
        for (int j = 0; j < grid.n_samples; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            hh.push_back(u[jj].adjoint() * h.at(grid.time(j)) * u[jj]);
        }
        worst = std::max(worst, henn_loss_at(ctx, hh));
    }
    return {worst < kLossFloor, "worst loss " + fmt("%.2e", worst) + " over 5 systems with n <= 3"};
}

// 4. One-spin training.
Outcome one_spin_training() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig c = config(Json{{"source", "one_spin"}});
    const RunArtifacts art = run_pipeline(c, c.seed);
    const RMatrix &pred = art.prediction->mean_coefficients;
    const auto x = static_cast<Eigen::Index>(PauliString::from_label("X").index());
    double sq = 0.0;
    for (int j = 0; j < c.grid.n_samples; ++j) {
        const double r = pred(x, j) - std::sin(c.grid.time(j));
        sq += r * r;
    }
    const double rmse = std::sqrt(sq / c.grid.n_samples);
    const double secs = seconds_since(t0);
    return {rmse < kOneSpinRmse && art.report->f_t == 1.0 && secs < kOneSpinSeconds,
            "RMSE " + fmt("%.4f", rmse) + ", F_t " + fmt("%.3f", art.report->f_t) + ", " + fmt("%.1f", secs) + " s"};
}

std::vector<std::size_t> pair_strings(int n, int a, int b) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < basis_size(n); ++i) {
        const PauliString p = PauliString::from_index(n, i);
        int support = 0;
        for (int s = 0; s < n; ++s) {
            support += p.label()[static_cast<std::size_t>(s)] != 'I';
        }
        if (support == 2 && p.label()[static_cast<std::size_t>(a)] != 'I' &&
            p.label()[static_cast<std::size_t>(b)] != 'I') {
            out.push_back(i);
        }
    }
    return out;
}

// 5. Three-spin chain observed at spin 1 (index 0). A link between two spins is predicted when any
//    of the nine two-body strings on that pair is above threshold. Per seed, 1-2 must be predicted
//    and 1-3 must not; 2-3 must be predicted in the same number of seeds. The count of seeds with
//    every one of the 18 strings on pairs 1-2 and 1-3 matching the truth is reported.
Outcome three_spin_chain_links() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c = config(Json{{"source", "chain3"}, {"realizations", kSeeds}});
    const SweepResult r = run_sweep(c);
    const auto p01 = pair_strings(3, 0, 1), p02 = pair_strings(3, 0, 2), p12 = pair_strings(3, 1, 2);
    int correct = 0, flagged = 0, exact = 0;
    std::string misses;
    for (const auto &o : r.realizations) {
        if (!o.report) continue;
        const LinkSet &pred = o.report->predicted_links;
        auto any = [&](const std::vector<std::size_t> &scope) {
            return std::any_of(scope.begin(), scope.end(), [&](std::size_t i) { return pred.count(i) > 0; });
        };
        correct += any(p01) && !any(p02);
        flagged += any(p12);
        bool all = true;
        for (const auto *scope : {&p01, &p02}) {
            for (std::size_t i : *scope) {
                if (pred.count(i) != o.report->truth_links.count(i)) {
                    all = false;
                    misses += " " + basis_label(3, i);
                }
            }
        }
        exact += all;
    }
    const double secs = seconds_since(t0);
    const bool pass = correct >= kChainMinCorrect && flagged >= kChainMinCorrect && r.f_t.mean >= kChainMeanFt &&
                      secs < kChainSeconds && r.failures() == 0;
    return {pass, "links 1-2/1-3 correct " + std::to_string(correct) + "/" + std::to_string(kSeeds) +
                      ", 2-3 flagged " + std::to_string(flagged) + "/" + std::to_string(kSeeds) +
                      ", all 18 pair strings exact " + std::to_string(exact) + "/" + std::to_string(kSeeds) +
                      (misses.empty() ? "" : " (misclassified:" + misses + ")") + ", " + summary_text("F_t", r.f_t) +
                      ", " + fmt("%.0f", secs) + " s"};
}

Json cyclic_json(int n) {
    return Json{{"source", "generated"}, {"family", "two_body"}, {"topology", "cyclic"},
                {"n", n},               {"observed", {0}},      {"realizations", kSeeds}};
}

// 6. Cyclic networks observed at one spin.
Outcome cyclic_networks() {
    const SweepResult r3 = run_sweep(config(cyclic_json(3)));
    const SweepResult r4 = run_sweep(config(cyclic_json(4)));
    const bool pass = r3.f_t.mean >= kCyclicMeanFt && r4.f_t.mean >= kCyclicMeanFt &&
                      r4.f_tprime.mean >= kCyclicMeanFtPrime && r3.failures() == 0 && r4.failures() == 0;
    return {pass, "n=3 " + summary_text("F_t", r3.f_t) + "; n=4 " + summary_text("F_t", r4.f_t) + ", " +
                      summary_text("F_t'", r4.f_tprime)};
}

// 7. Toffoli and Fredkin gates observed at spin 3.
Outcome gates() {
    const ExperimentConfig c = config(Json{{"source", "gate"}, {"realizations", kSeeds}});
    const std::vector<GateRow> rows = run_gate_table(c);
    std::map<std::pair<Gate, bool>, MetricSummary> ft;
    int failures = 0;
    for (const auto &row : rows) {
        ft[{row.gate, row.timedep}] = row.result.f_t;
        failures += row.result.failures();
    }
    const double tof = ft[{Gate::kToffoli, false}].mean, fre = ft[{Gate::kFredkin, false}].mean;
    const double tof_td = ft[{Gate::kToffoli, true}].mean, fre_td = ft[{Gate::kFredkin, true}].mean;
    const bool pass = std::abs(tof - kToffoliTarget) <= kGateBand && std::abs(fre - kFredkinTarget) <= kGateBand &&
                      fre >= tof && tof_td >= kTimeDepGateFloor && fre_td >= kTimeDepGateFloor && failures == 0;
    return {pass, "static " + summary_text("Toffoli F_t", ft[{Gate::kToffoli, false}]) + ", " +
                      summary_text("Fredkin F_t", ft[{Gate::kFredkin, false}]) + "; time-dependent " +
                      summary_text("Toffoli F_t", ft[{Gate::kToffoli, true}]) + ", " +
                      summary_text("Fredkin F_t", ft[{Gate::kFredkin, true}])};
}

// 8. Measurement noise on cyclic n=4 observed at one spin.
Outcome noise() {
    const std::vector<NoisePoint> points = run_noise_sweep(config(cyclic_json(4)), kNoiseSigmas);
    bool local_above = true;
    int failures = 0;
    std::ostringstream o;
    for (const auto &p : points) {
        local_above = local_above && p.result.f_local.mean >= p.result.f_t.mean;
        failures += p.result.failures();
        o << "sigma " << fmt("%.2f", p.sigma) << ": " << summary_text("F_t", p.result.f_t) << ", "
          << summary_text("F_o'", p.result.f_local) << "; ";
    }
    const double drop = points.front().result.f_t.mean - points.back().result.f_t.mean;
    o << "drop " << fmt("%.3f", drop);
    return {drop < kNoiseMaxDrop && local_above && failures == 0, o.str()};
}

// 9. Property suites.
Outcome properties() {
    std::vector<std::string> failed;
    auto check = [&](const std::string &name, bool ok) {
        if (!ok) failed.push_back(name);
    };

    double pauli_err = 0.0;
    for (int n = 1; n <= 3; ++n) {
        const auto basis = basis_enumerate(n);
        std::vector<CMatrix> mats;
        for (const auto &p : basis) mats.push_back(pauli_matrix(p));
        const double dim = static_cast<double>(hilbert_dim(n));
        for (std::size_t a = 0; a < mats.size(); ++a) {
            for (std::size_t b = 0; b < mats.size(); ++b) {
                const Complex tr = (mats[a].adjoint() * mats[b]).trace() / dim;
                pauli_err = std::max(pauli_err, std::abs(tr - Complex(a == b ? 1.0 : 0.0, 0.0)));
            }
        }
    }
    Rng rng(9);
    for (int n = 1; n <= 5; ++n) {
        const auto dim = static_cast<Eigen::Index>(hilbert_dim(n));
        const CMatrix m = CMatrix::NullaryExpr(dim, dim, [&] { return Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5); });
        const CMatrix h = m + m.adjoint();
        pauli_err = std::max(pauli_err, max_abs_diff(reconstruct(decompose(h)), h));
        pauli_err = std::max(pauli_err, max_abs_diff(decode(encode(h)), h));
    }
    check("pauli", pauli_err < kPauliTol);

    double drift = 0.0;
    const std::vector<HamiltonianSpec> models = {one_spin_sine(), three_spin_chain(),
                                                 gen_two_body(NetworkTopology::cyclic(3), 1),
                                                 gen_two_body(NetworkTopology::cyclic(4), 1),
                                                 gen_two_body(NetworkTopology::tree(4), 1),
                                                 gen_long_range(4, 1),
                                                 gate_hamiltonian(Gate::kToffoli, true)};
    for (const auto &spec : models) {
        drift = std::max(drift, max_norm_drift(evolve_states(DenseHamiltonian(spec),
                                                              gen_initial_states(spec.n, 20, 3).as_matrix(),
                                                              TimeGrid{})));
    }
    check("norm", drift < kNormTol);

    const TimeGrid fine{0.0, 5.0, 8001, 1};
    const DenseHamiltonian h(gen_two_body(NetworkTopology::cyclic(3), 8));
    const auto u = propagators(h, fine);
    OperatorSeries hh{fine, "HH", {}};
    for (int j = 0; j < fine.n_samples; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        hh.matrices.push_back(u[jj].adjoint() * h.at(fine.time(j)) * u[jj]);
    }
    const PictureConversion pc = heisenberg_to_schrodinger(hh, 1);
    double round_trip = 0.0;
    for (int j = 0; j < fine.n_samples; ++j) {
        round_trip =
            std::max(round_trip, max_abs_diff(pc.schrodinger.matrices[static_cast<std::size_t>(j)], h.at(fine.time(j))));
    }
    check("unitarity", pc.max_unitarity_error < kUnitaryTol);
    check("round trip", round_trip < kRoundTripTol);

    bool monotone = true, bounds = true;
    for (int trial = 0; trial < 50; ++trial) {
        CouplingProfile p;
        p.n = 2;
        p.cbar = RVector::NullaryExpr(16, [&] { return uniform01(rng); });
        p.cbar(0) = 0.0;
        p.normalized = p.cbar / p.cbar.maxCoeff();
        LinkSet prev = classify_links(p, 0.0);
        for (double th = 0.02; th < 1.0; th += 0.02) {
            const LinkSet cur = classify_links(p, th);
            monotone = monotone && std::includes(prev.begin(), prev.end(), cur.begin(), cur.end());
            prev = cur;
        }
        const LinkSet truth = classify_links(p, uniform01(rng));
        const double f = fidelity_t(classify_links(p, 0.1), truth, 2);
        const RMatrix ref = RMatrix::NullaryExpr(16, 10, [&] { return uniform01(rng) - 0.5; });
        const RMatrix pred = RMatrix::NullaryExpr(16, 10, [&] { return uniform01(rng) - 0.5; });
        const double fl = fidelity_local(pred, ref, partition_subspaces(2, {0}));
        bounds = bounds && f >= 0.0 && f <= 1.0 && fl >= 0.0 && fl <= 1.0;
    }
    check("threshold monotonicity", monotone);
    check("fidelity bounds", bounds);

    ExperimentConfig c = config(Json{{"n", 2}, {"topology", "chain"}, {"training", {{"epochs", 30}}}});
    const RunArtifacts a = run_pipeline(c, 77), b = run_pipeline(c, 77);
    check("seed determinism", a.spec.c1.values == b.spec.c1.values &&
                                  a.observations.values.data() == b.observations.values.data() &&
                                  a.prediction->mean_coefficients == b.prediction->mean_coefficients &&
                                  a.report->f_t == b.report->f_t);

    std::string detail = "pauli " + fmt("%.1e", pauli_err) + ", norm drift " + fmt("%.1e", drift) +
                         ", unitarity " + fmt("%.1e", pc.max_unitarity_error) + ", round trip " +
                         fmt("%.1e", round_trip);
    for (const auto &f : failed) detail += "; failed: " + f;
    return {failed.empty(), detail};
}

}  // namespace
}  // namespace henntomo

int main(int argc, char **argv) {
    using namespace henntomo;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"one-spin analytic oracle", one_spin_oracle},
        {"gradient correctness", gradient_check},
        {"loss floor", loss_floor},
        {"one-spin training", one_spin_training},
        {"three-spin chain", three_spin_chain_links},
        {"cyclic networks", cyclic_networks},
        {"quantum gates", gates},
        {"measurement noise", noise},
        {"property suites", properties},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << "CRITERION " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[k].first << ": "
                  << o.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}

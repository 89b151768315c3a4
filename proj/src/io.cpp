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


#include "henntomo/io.hpp"

#include <fstream>
#include <iomanip>

#include "henntomo/error.hpp"

namespace henntomo {

namespace fs = std::filesystem;

namespace {

Json sparse_coefficients(const PauliCoefficients &c) {
    Json out = Json::object();
    for (Eigen::Index i = 0; i < c.values.size(); ++i) {
        if (c.values(i) != 0.0) {
            out[std::to_string(i)] = c.values(i);
        }
    }
    return out;
}

PauliCoefficients dense_coefficients(int n, const Json &j) {
    PauliCoefficients c = PauliCoefficients::zero(n);
    if (!j.is_object()) {
        throw InputError("coefficients must be an object of index -> value");
    }
    for (const auto &[key, value] : j.items()) {
        std::size_t idx = 0;
        const bool numeric = key.find_first_not_of("0123456789") == std::string::npos;
        if (!numeric && key.size() != static_cast<std::size_t>(n)) {
            throw InputError("coefficient label '" + key + "' does not have " + std::to_string(n) + " factors");
        }
        try {
            idx = numeric ? std::stoul(key) : PauliString::from_label(key).index();
        } catch (const std::exception &) {
            throw InputError("bad coefficient key '" + key + "'");
        }
        if (idx >= basis_size(n)) {
            throw InputError("coefficient key '" + key + "' out of range");
        }
        c.values(static_cast<Eigen::Index>(idx)) = value.get<double>();
    }
    return c;
}

std::ofstream open_out(const fs::path &path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write " + path.string());
    }
    f << std::setprecision(17);
    return f;
}

}  // namespace

Json spec_to_json(const HamiltonianSpec &spec) {
    Json j;
    j["n"] = spec.n;
    j["family"] = to_string(spec.family);
    j["omega"] = spec.driving.omega;
    j["phi"] = spec.driving.phi;
    j["seed"] = spec.seed;
    j["c1"] = sparse_coefficients(spec.c1);
    j["c2"] = sparse_coefficients(spec.c2);
    Json labels = Json::object();
    for (std::size_t i : true_link_set(spec)) {
        labels[std::to_string(i)] = basis_label(spec.n, i);
    }
    j["labels"] = labels;
    if (spec.topology) {
        const auto &adj = spec.topology->adjacency();
        std::vector<std::vector<int>> rows(static_cast<std::size_t>(adj.rows()));
        for (Eigen::Index r = 0; r < adj.rows(); ++r) {
            for (Eigen::Index c = 0; c < adj.cols(); ++c) {
                rows[static_cast<std::size_t>(r)].push_back(adj(r, c));
            }
        }
        j["topology"] = {{"tag", to_string(spec.topology->tag())}, {"adjacency", rows}};
    } else {
        j["topology"] = nullptr;
    }
    return j;
}

HamiltonianSpec spec_from_json(const Json &j) {
    try {
        HamiltonianSpec s;
        s.n = j.at("n").get<int>();
        check_spin_count(s.n);
        s.family = parse_family(j.value("family", std::string("two_body")));
        s.driving.omega = j.value("omega", 0.0);
        s.driving.phi = j.value("phi", 0.0);
        s.seed = j.value("seed", std::uint64_t{0});
        s.c1 = j.contains("c1") ? dense_coefficients(s.n, j.at("c1")) : PauliCoefficients::zero(s.n);
        s.c2 = j.contains("c2") ? dense_coefficients(s.n, j.at("c2")) : PauliCoefficients::zero(s.n);
        if (j.contains("topology") && !j.at("topology").is_null()) {
            const auto rows = j.at("topology").at("adjacency").get<std::vector<std::vector<int>>>();
            Eigen::MatrixXi adj(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r].size() != rows.size()) {
                    throw InputError("adjacency must be square");
                }
                for (std::size_t c = 0; c < rows.size(); ++c) {
                    adj(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
                }
            }
            s.topology = NetworkTopology::custom(adj);
        }
        return s;
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed Hamiltonian spec: ") + e.what());
    } catch (const ContractError &e) {
        throw InputError(e.what());
    }
}

Json grid_to_json(const TimeGrid &grid) {
    return {{"t_start", grid.t_start}, {"t_end", grid.t_end}, {"n_samples", grid.n_samples},
            {"substeps", grid.substeps}};
}

TimeGrid grid_from_json(const Json &j, const TimeGrid &defaults) {
    TimeGrid g = defaults;
    g.t_start = j.value("t_start", g.t_start);
    g.t_end = j.value("t_end", g.t_end);
    g.n_samples = j.value("n_samples", g.n_samples);
    g.substeps = j.value("substeps", g.substeps);
    g.validate();
    return g;
}

Json params_to_json(const MlpParameters &params) {
    Json j;
    j["layer_sizes"] = params.layer_sizes;
    j["time_scale"] = {{"scale", params.time_scale.scale}, {"offset", params.time_scale.offset}};
    j["seed"] = params.seed;
    Json layers = Json::array();
    for (std::size_t l = 0; l < params.weights.size(); ++l) {
        const RMatrix &w = params.weights[l];
        std::vector<double> flat;
        flat.reserve(static_cast<std::size_t>(w.size()));
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                flat.push_back(w(r, c));
            }
        }
        const RVector &b = params.biases[l];
        layers.push_back({{"weights", flat}, {"biases", std::vector<double>(b.data(), b.data() + b.size())}});
    }
    j["layers"] = layers;
    return j;
}

MlpParameters params_from_json(const Json &j) {
    try {
        MlpParameters p;
        p.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
        p.time_scale.scale = j.at("time_scale").at("scale").get<double>();
        p.time_scale.offset = j.at("time_scale").at("offset").get<double>();
        p.seed = j.value("seed", std::uint64_t{0});
        const Json &layers = j.at("layers");
        if (layers.size() + 1 != p.layer_sizes.size()) {
            throw InputError("layer count does not match layer_sizes");
        }
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const int rows = p.layer_sizes[l + 1];
            const int cols = p.layer_sizes[l];
            const auto flat = layers[l].at("weights").get<std::vector<double>>();
            const auto bias = layers[l].at("biases").get<std::vector<double>>();
            if (flat.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) ||
                bias.size() != static_cast<std::size_t>(rows)) {
                throw InputError("layer " + std::to_string(l) + " has the wrong shape");
            }
            RMatrix w(rows, cols);
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < cols; ++c) {
                    w(r, c) = flat[static_cast<std::size_t>(r * cols + c)];
                }
            }
            p.weights.push_back(std::move(w));
            p.biases.push_back(Eigen::Map<const RVector>(bias.data(), rows));
        }
        p.num_spins();
        return p;
    } catch (const Json::exception &e) {
        throw InputError(std::string("malformed network parameters: ") + e.what());
    }
}

Json training_to_json(const TrainingConfig &cfg) {
    return {{"learning_rate", cfg.learning_rate}, {"epochs", cfg.epochs},
            {"optimizer", to_string(cfg.optimizer)}, {"beta1", cfg.beta1},
            {"beta2", cfg.beta2}, {"epsilon", cfg.epsilon},
            {"full_batch", cfg.full_batch}, {"batch_times", cfg.batch_times},
            {"hidden_layers", cfg.hidden_layers}, {"init_gain", cfg.init_gain}};
}

TrainingConfig training_from_json(const Json &j, const TrainingConfig &defaults) {
    TrainingConfig c = defaults;
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.epochs = j.value("epochs", c.epochs);
    if (j.contains("optimizer")) {
        c.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
    }
    c.beta1 = j.value("beta1", c.beta1);
    c.beta2 = j.value("beta2", c.beta2);
    c.epsilon = j.value("epsilon", c.epsilon);
    c.full_batch = j.value("full_batch", c.full_batch);
    c.batch_times = j.value("batch_times", c.batch_times);
    c.hidden_layers = j.value("hidden_layers", c.hidden_layers);
    c.init_gain = j.value("init_gain", c.init_gain);
    c.validate();
    return c;
}

Json report_to_json(const TomographyReport &report) {
    Json profile = Json::array();
    for (Eigen::Index i = 0; i < report.profile.normalized.size(); ++i) {
        profile.push_back({{"index", i},
                           {"label", basis_label(report.n, static_cast<std::size_t>(i))},
                           {"value", report.profile.normalized(i)}});
    }
    auto labelled = [&](const LinkSet &s) {
        Json out = Json::array();
        for (std::size_t i : s) {
            out.push_back({{"index", i}, {"label", basis_label(report.n, i)}});
        }
        return out;
    };
    Json j;
    j["n"] = report.n;
    j["observed"] = report.observed;
    j["threshold"] = report.threshold;
    j["normalized_profile"] = profile;
    j["predicted_links"] = labelled(report.predicted_links);
    j["truth_links"] = labelled(report.truth_links);
    j["missing_links"] = missing_links(report.predicted_links, report.truth_links);
    j["f_t"] = report.f_t;
    j["f_tprime"] = report.f_tprime ? Json(*report.f_tprime) : Json(nullptr);
    j["f_local"] = report.f_local ? Json(*report.f_local) : Json(nullptr);
    return j;
}

Json observations_header(const ObservationSet &obs) {
    std::vector<std::string> labels;
    for (const auto &ps : obs.observables) {
        labels.push_back(ps.label());
    }
    return {{"n", obs.n},
            {"grid", grid_to_json(obs.grid)},
            {"observed", obs.observed},
            {"observables", labels},
            {"states", obs.values.dim0()},
            {"derivative_mode", to_string(obs.derivative_mode)},
            {"noise_sigma", obs.noise_sigma},
            {"seed", obs.seed}};
}

void write_observations_csv(const fs::path &path, const ObservationSet &obs) {
    auto write = [&](const fs::path &p, const Array3 &a) {
        std::ofstream f = open_out(p);
        f << "state,observable";
        for (int j = 0; j < obs.grid.n_samples; ++j) {
            f << ",t" << j;
        }
        f << '\n';
        for (std::size_t s = 0; s < a.dim0(); ++s) {
            for (std::size_t k = 0; k < a.dim1(); ++k) {
                f << s << ',' << obs.observables[k].label();
                for (std::size_t j = 0; j < a.dim2(); ++j) {
                    f << ',' << a(s, k, j);
                }
                f << '\n';
            }
        }
    };
    write(path, obs.values);
    fs::path deriv = path;
    deriv.replace_filename(path.stem().string() + "_derivatives" + path.extension().string());
    write(deriv, obs.derivatives);
}

void write_coefficients_csv(const fs::path &path, const TimeGrid &grid, const RMatrix &coefficients) {
    int n = 0;
    for (int m = 1; m <= kMaxSpins; ++m) {
        if (basis_size(m) == static_cast<std::size_t>(coefficients.rows())) {
            n = m;
        }
    }
    if (n == 0) {
        throw SizeError("coefficient rows must be 4^n");
    }
    std::ofstream f = open_out(path);
    f << 't';
    for (Eigen::Index i = 0; i < coefficients.rows(); ++i) {
        f << ',' << basis_label(n, static_cast<std::size_t>(i));
    }
    f << '\n';
    for (Eigen::Index j = 0; j < coefficients.cols(); ++j) {
        f << grid.time(static_cast<int>(j));
        for (Eigen::Index i = 0; i < coefficients.rows(); ++i) {
            f << ',' << coefficients(i, j);
        }
        f << '\n';
    }
}

void write_operator_series_csv(const fs::path &path, const OperatorSeries &series) {
    std::ofstream f = open_out(path);
    f << "sample,t";
    const Eigen::Index dim = series.matrices.empty() ? 0 : series.matrices.front().rows();
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            f << ",m" << r << '_' << c << "_re,m" << r << '_' << c << "_im";
        }
    }
    f << '\n';
    for (std::size_t j = 0; j < series.matrices.size(); ++j) {
        const CMatrix &m = series.matrices[j];
        f << j << ',' << series.grid.time(static_cast<int>(j));
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                f << ',' << m(r, c).real() << ',' << m(r, c).imag();
            }
        }
        f << '\n';
    }
}

void write_operator_series(const fs::path &dir, const std::string &stem, const std::vector<OperatorSeries> &series) {
    for (const auto &s : series) {
        write_operator_series_csv(dir / (stem + "_" + s.label + ".csv"), s);
    }
}

void write_loss_csv(const fs::path &path, const std::vector<double> &loss) {
    std::ofstream f = open_out(path);
    f << "epoch,loss\n";
    for (std::size_t e = 0; e < loss.size(); ++e) {
        f << e << ',' << loss[e] << '\n';
    }
}

void write_json(const fs::path &path, Json j, const std::string &config_hash) {
    j["config_hash"] = config_hash;
    std::ofstream f = open_out(path);
    f << j.dump(2) << '\n';
}

Json read_json(const fs::path &path) {
    std::ifstream f(path);
    if (!f) {
        throw InputError("cannot read " + path.string());
    }
    try {
        return Json::parse(f);
    } catch (const Json::parse_error &e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace henntomo

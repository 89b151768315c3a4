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

#include "henntomo/spin_models.hpp"

#include <algorithm>

#include "henntomo/error.hpp"
#include "henntomo/rng.hpp"

namespace henntomo {

namespace {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix single(char label) { return pauli_matrix(PauliString::from_label(std::string(1, label))); }

// Strings the two-body model may populate: weight 1, or weight 2 on an edge.
bool two_body_allowed(const PauliString &ps, const NetworkTopology &topo) {
    const int w = ps.weight();
    if (w == 1) {
        return true;
    }
    if (w != 2) {
        return false;
    }
    int first = -1;
    int second = -1;
    for (int k = 0; k < ps.num_spins(); ++k) {
        if (ps[k] != 0) {
            (first < 0 ? first : second) = k;
        }
    }
    return topo.connected(first, second);
}

}  // namespace

std::string to_string(TopologyTag tag) {
    switch (tag) {
        case TopologyTag::kChain:
            return "chain";
        case TopologyTag::kCyclic:
            return "cyclic";
        case TopologyTag::kTree:
            return "tree";
        case TopologyTag::kCustom:
            return "custom";
    }
    return "custom";
}

TopologyTag parse_topology_tag(const std::string &name) {
    if (name == "chain") return TopologyTag::kChain;
    if (name == "cyclic") return TopologyTag::kCyclic;
    if (name == "tree") return TopologyTag::kTree;
    if (name == "custom") return TopologyTag::kCustom;
    throw InputError("unknown topology '" + name + "'");
}

NetworkTopology::NetworkTopology(Eigen::MatrixXi adjacency, TopologyTag tag)
    : adjacency_(std::move(adjacency)), tag_(tag) {}

NetworkTopology NetworkTopology::empty(int n) {
    check_spin_count(n);
    return {Eigen::MatrixXi::Zero(n, n), TopologyTag::kCustom};
}

NetworkTopology NetworkTopology::chain(int n) {
    check_spin_count(n);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        a(i, i + 1) = a(i + 1, i) = 1;
    }
    return {a, TopologyTag::kChain};
}

NetworkTopology NetworkTopology::cyclic(int n) {
    NetworkTopology t = chain(n);
    if (n >= 3) {
        t.adjacency_(0, n - 1) = t.adjacency_(n - 1, 0) = 1;
    }
    t.tag_ = TopologyTag::kCyclic;
    return t;
}

NetworkTopology NetworkTopology::tree(int n) {
    check_spin_count(n);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        a(0, i) = a(i, 0) = 1;
    }
    return {a, TopologyTag::kTree};
}

NetworkTopology NetworkTopology::custom(const Eigen::MatrixXi &adjacency) {
    if (adjacency.rows() != adjacency.cols()) {
        throw ContractError("adjacency matrix must be square");
    }
    check_spin_count(static_cast<int>(adjacency.rows()));
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
        if (adjacency(i, i) != 0) {
            throw ContractError("adjacency diagonal must be zero");
        }
        for (Eigen::Index j = 0; j < adjacency.cols(); ++j) {
            if (adjacency(i, j) != adjacency(j, i) || (adjacency(i, j) != 0 && adjacency(i, j) != 1)) {
                throw ContractError("adjacency must be symmetric with entries in {0,1}");
            }
        }
    }
    return {adjacency, TopologyTag::kCustom};
}

NetworkTopology NetworkTopology::make(TopologyTag tag, int n) {
    switch (tag) {
        case TopologyTag::kChain:
            return chain(n);
        case TopologyTag::kCyclic:
            return cyclic(n);
        case TopologyTag::kTree:
            return tree(n);
        case TopologyTag::kCustom:
            break;
    }
    throw InputError("custom topology needs an explicit adjacency matrix");
}

int NetworkTopology::edge_count() const { return adjacency_.sum() / 2; }

std::string to_string(Family family) {
    switch (family) {
        case Family::kTwoBody:
            return "two_body";
        case Family::kLongRange:
            return "long_range";
        case Family::kGateStatic:
            return "gate_static";
        case Family::kGateTimeDep:
            return "gate_timedep";
    }
    return "two_body";
}

Family parse_family(const std::string &name) {
    if (name == "two_body") return Family::kTwoBody;
    if (name == "long_range") return Family::kLongRange;
    if (name == "gate_static") return Family::kGateStatic;
    if (name == "gate_timedep") return Family::kGateTimeDep;
    throw InputError("unknown Hamiltonian family '" + name + "'");
}

HamiltonianSpec gen_two_body(const NetworkTopology &topology, std::uint64_t seed) {
    const int n = topology.num_spins();
    check_spin_count(n);
    Rng rng(seed);
    HamiltonianSpec spec;
    spec.n = n;
    spec.family = Family::kTwoBody;
    spec.topology = topology;
    spec.seed = seed;
    spec.driving.omega = uniform01(rng);
    spec.driving.phi = uniform01(rng);
    spec.c1 = PauliCoefficients::zero(n);
    spec.c2 = PauliCoefficients::zero(n);
    for (std::size_t i = 1; i < basis_size(n); ++i) {
        if (!two_body_allowed(PauliString::from_index(n, i), topology)) {
            continue;
        }
        const auto k = static_cast<Eigen::Index>(i);
        spec.c1.values(k) = uniform01(rng);
        spec.c2.values(k) = uniform01(rng);
    }
    return spec;
}

HamiltonianSpec gen_long_range(int n, std::uint64_t seed) {
    check_spin_count(n);
    Rng rng(seed);
    HamiltonianSpec spec;
    spec.n = n;
    spec.family = Family::kLongRange;
    spec.seed = seed;
    spec.driving.omega = uniform01(rng);
    spec.driving.phi = uniform01(rng);
    spec.c1 = PauliCoefficients::zero(n);
    spec.c2 = PauliCoefficients::zero(n);
    std::bernoulli_distribution gate(0.5);
    for (std::size_t i = 1; i < basis_size(n); ++i) {
        if (!gate(rng)) {
            continue;
        }
        const auto k = static_cast<Eigen::Index>(i);
        spec.c1.values(k) = uniform01(rng);
        spec.c2.values(k) = uniform01(rng);
    }
    return spec;
}

HamiltonianSpec one_spin_sine() {
    HamiltonianSpec spec;
    spec.n = 1;
    spec.family = Family::kTwoBody;
    spec.topology = NetworkTopology::empty(1);
    spec.driving = {1.0, 0.0};
    spec.c1 = PauliCoefficients::zero(1);
    spec.c2 = PauliCoefficients::zero(1);
    spec.c2.values(PauliString::from_label("X").index()) = 1.0;
    return spec;
}

HamiltonianSpec three_spin_chain() {
    constexpr int n = 3;
    HamiltonianSpec spec;
    spec.n = n;
    spec.family = Family::kTwoBody;
    spec.topology = NetworkTopology::chain(n);
    spec.driving = {1.0, 0.0};
    spec.c1 = PauliCoefficients::zero(n);
    spec.c2 = PauliCoefficients::zero(n);
    for (int spin = 0; spin < n; ++spin) {
        for (std::uint8_t comp = 1; comp <= 2; ++comp) {
            std::vector<std::uint8_t> slots(n, 0);
            slots[static_cast<std::size_t>(spin)] = comp;
            spec.c2.values(static_cast<Eigen::Index>(PauliString(slots).index())) = 1.0;
        }
    }
    for (int spin = 0; spin + 1 < n; ++spin) {
        for (std::uint8_t l = 1; l <= 3; ++l) {
            for (std::uint8_t m = 1; m <= 2; ++m) {
                std::vector<std::uint8_t> slots(n, 0);
                slots[static_cast<std::size_t>(spin)] = l;
                slots[static_cast<std::size_t>(spin + 1)] = m;
                spec.c2.values(static_cast<Eigen::Index>(PauliString(slots).index())) = 1.0;
            }
        }
    }
    return spec;
}

DenseHamiltonian::DenseHamiltonian(const HamiltonianSpec &spec)
    : n_(spec.n), static_part_(reconstruct(spec.c1)), driven_part_(reconstruct(spec.c2)), driving_(spec.driving) {
    auto spectral = [](const CMatrix &m) {
        return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    };
    norm_bound_ = spectral(static_part_) + spectral(driven_part_);
}

CMatrix eval_hamiltonian(const HamiltonianSpec &spec, double t) { return DenseHamiltonian(spec).at(t); }

std::string to_string(Gate gate) { return gate == Gate::kToffoli ? "toffoli" : "fredkin"; }

Gate parse_gate(const std::string &name) {
    if (name == "toffoli") return Gate::kToffoli;
    if (name == "fredkin") return Gate::kFredkin;
    throw InputError("unknown gate '" + name + "'");
}

HamiltonianSpec gate_hamiltonian(Gate gate, bool timedep) {
    const CMatrix id2 = CMatrix::Identity(2, 2);
    CMatrix generator;
    if (gate == Gate::kToffoli) {
        generator = kron(kron(id2 - single('Z'), id2 - single('Z')), id2 - single('X'));
    } else {
        const CMatrix id4 = CMatrix::Identity(4, 4);
        CMatrix swap_sum = CMatrix::Zero(4, 4);
        for (char c : {'X', 'Y', 'Z'}) {
            swap_sum += kron(single(c), single(c));
        }
        generator = kron(id2 - single('Z'), id4 - swap_sum);
    }
    generator *= kPi / 8.0;

    PauliCoefficients coeffs = decompose(generator);
    // The products only produce multiples of pi/8; clear rounding residue on absent strings.
    for (Eigen::Index i = 0; i < coeffs.values.size(); ++i) {
        if (std::abs(coeffs.values(i)) < 1e-12) {
            coeffs.values(i) = 0.0;
        }
    }

    HamiltonianSpec spec;
    spec.n = 3;
    spec.c1 = PauliCoefficients::zero(3);
    spec.c2 = PauliCoefficients::zero(3);
    if (timedep) {
        spec.family = Family::kGateTimeDep;
        spec.c2.values = (kPi / 2.0) * coeffs.values;
        spec.driving = {kPi, 0.0};
    } else {
        spec.family = Family::kGateStatic;
        spec.c1 = coeffs;
    }
    return spec;
}

CMatrix gate_unitary(Gate gate, double t) {
    const Complex e = std::exp(kI * kPi * t);
    CMatrix x0(2, 2);
    x0 << 0.5 * (1.0 + e), 0.5 * (1.0 - e), 0.5 * (1.0 - e), 0.5 * (1.0 + e);
    CMatrix u = CMatrix::Identity(8, 8);
    const Eigen::Index at = gate == Gate::kToffoli ? 6 : 5;
    u.block(at, at, 2, 2) = x0;
    return u;
}

LinkSet true_link_set(const HamiltonianSpec &spec) {
    LinkSet links;
    for (Eigen::Index i = 1; i < spec.c1.values.size(); ++i) {
        if (std::abs(spec.c1.values(i)) + std::abs(spec.c2.values(i)) > 0.0) {
            links.insert(static_cast<std::size_t>(i));
        }
    }
    return links;
}

std::vector<std::size_t> SubspacePartition::indices(SubspaceClass cls) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] == cls) {
            out.push_back(i);
        }
    }
    return out;
}

std::size_t SubspacePartition::count(SubspaceClass cls) const {
    return static_cast<std::size_t>(std::count(classes.begin(), classes.end(), cls));
}

SubspacePartition partition_subspaces(int n, const std::vector<int> &observed) {
    check_spin_count(n);
    if (observed.empty()) {
        throw InputError("observed spin set must not be empty");
    }
    std::vector<bool> is_observed(static_cast<std::size_t>(n), false);
    for (int s : observed) {
        if (s < 0 || s >= n) {
            throw InputError("observed spin " + std::to_string(s) + " outside [0, " + std::to_string(n) + ")");
        }
        if (is_observed[static_cast<std::size_t>(s)]) {
            throw InputError("observed spin " + std::to_string(s) + " listed twice");
        }
        is_observed[static_cast<std::size_t>(s)] = true;
    }

    SubspacePartition part;
    part.n = n;
    part.observed = observed;
    std::sort(part.observed.begin(), part.observed.end());
    part.classes.resize(basis_size(n));
    for (std::size_t i = 0; i < basis_size(n); ++i) {
        const PauliString ps = PauliString::from_index(n, i);
        bool on_observed = false;
        bool on_hidden = false;
        for (int k = 0; k < n; ++k) {
            if (ps[k] != 0) {
                (is_observed[static_cast<std::size_t>(k)] ? on_observed : on_hidden) = true;
            }
        }
        SubspaceClass cls = SubspaceClass::kIdentity;
        if (on_observed && on_hidden) {
            cls = SubspaceClass::kInteraction;
        } else if (on_observed) {
            cls = SubspaceClass::kObserved;
        } else if (on_hidden) {
            cls = SubspaceClass::kHidden;
        }
        part.classes[i] = cls;
    }
    return part;
}

}  // namespace henntomo

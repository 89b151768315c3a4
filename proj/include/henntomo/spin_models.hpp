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

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "henntomo/linalg.hpp"
#include "henntomo/pauli.hpp"

namespace henntomo {

/// f(t) = sin(omega * t + 2 pi phi).
struct DrivingFunction {
    double omega = 0.0;
    double phi = 0.0;

    double operator()(double t) const { return std::sin(omega * t + 2.0 * kPi * phi); }
};

enum class TopologyTag { kChain, kCyclic, kTree, kCustom };

std::string to_string(TopologyTag tag);
TopologyTag parse_topology_tag(const std::string &name);

/// Undirected coupling graph over spins 0..n-1. Spin 0 is the one that gets observed, so the
/// chain starts at it (degree 1) and the tree is a star centered on it.
class NetworkTopology {
   public:
    static NetworkTopology chain(int n);
    static NetworkTopology cyclic(int n);
    static NetworkTopology tree(int n);
    static NetworkTopology empty(int n);
    /// Throws ContractError for asymmetric input, nonzero diagonal or entries outside {0,1}.
    static NetworkTopology custom(const Eigen::MatrixXi &adjacency);
    static NetworkTopology make(TopologyTag tag, int n);

    int num_spins() const { return static_cast<int>(adjacency_.rows()); }
    TopologyTag tag() const { return tag_; }
    const Eigen::MatrixXi &adjacency() const { return adjacency_; }
    bool connected(int a, int b) const { return adjacency_(a, b) != 0; }
    int edge_count() const;

   private:
    NetworkTopology(Eigen::MatrixXi adjacency, TopologyTag tag);

    Eigen::MatrixXi adjacency_;
    TopologyTag tag_ = TopologyTag::kCustom;
};

enum class Family { kTwoBody, kLongRange, kGateStatic, kGateTimeDep };

std::string to_string(Family family);
Family parse_family(const std::string &name);

/// H(t) = h1 + f(t) h2 with h1, h2 given by Pauli coefficients.
struct HamiltonianSpec {
    int n = 0;
    PauliCoefficients c1;
    PauliCoefficients c2;
    DrivingFunction driving;
    Family family = Family::kTwoBody;
    std::optional<NetworkTopology> topology;
    std::uint64_t seed = 0;
};

/// Self-couplings (3 per spin) and the 9 component pairs of every edge get independent
/// uniform [0,1) coefficients in both parts; everything else is zero.
///
/// Draw order: omega, phi, then for each canonical index in increasing order that is allowed,
/// c1 followed by c2.
HamiltonianSpec gen_two_body(const NetworkTopology &topology, std::uint64_t seed);

/// Every non-identity string is present with probability 1/2 (one shared draw for both parts);
/// present strings get independent uniform [0,1) coefficients in c1 and c2.
///
/// Draw order: omega, phi, then per canonical index i >= 1: the Bernoulli gate and, when it is
/// 1, c1 then c2.
HamiltonianSpec gen_long_range(int n, std::uint64_t seed);

/// One spin, H(t) = sigma_x sin t.
HamiltonianSpec one_spin_sine();

/// Three-spin chain H(t) = sin t (sum of x,y self terms on every spin + the 6 products
/// sigma^i_l sigma^{i+1}_m, l in {x,y,z}, m in {x,y}, on edges 0-1 and 1-2).
HamiltonianSpec three_spin_chain();

/// Dense h1 and h2 cached for repeated evaluation.
class DenseHamiltonian {
   public:
    explicit DenseHamiltonian(const HamiltonianSpec &spec);

    CMatrix at(double t) const { return static_part_ + driving_(t) * driven_part_; }
    const CMatrix &static_part() const { return static_part_; }
    const CMatrix &driven_part() const { return driven_part_; }
    int num_spins() const { return n_; }
    /// Upper bound on the spectral norm of H(t) over all t: |h1| + |h2|.
    double norm_bound() const { return norm_bound_; }

   private:
    int n_;
    double norm_bound_ = 0.0;
    CMatrix static_part_;
    CMatrix driven_part_;
    DrivingFunction driving_;
};

CMatrix eval_hamiltonian(const HamiltonianSpec &spec, double t);

enum class Gate { kToffoli, kFredkin };

std::string to_string(Gate gate);
Gate parse_gate(const std::string &name);

/// Pauli expansion of the three-spin gate generators
///   Toffoli: (pi/8)(I - Z1)(I - Z2)(I - X3)
///   Fredkin: (pi/8)(I - Z1)(I4 - X2X3 - Y2Y3 - Z2Z3).
/// Static specs keep the generator in c1. Time-dependent specs put (pi/2) * generator in c2 with
/// f(t) = sin(pi t), so the integral of the modulation over [0,1] is 1 and the t=1 action is
/// unchanged.
HamiltonianSpec gate_hamiltonian(Gate gate, bool timedep);

/// Block unitary diag(I6, X0(t)) (Toffoli) or diag(I5, X0(t), 1) (Fredkin) with
/// X0(t) = (1/2)[[1+e^{i pi t}, 1-e^{i pi t}], [1-e^{i pi t}, 1+e^{i pi t}]].
CMatrix gate_unitary(Gate gate, double t);

using LinkSet = std::set<std::size_t>;

/// Indices i >= 1 with |c1_i| + |c2_i| > 0.
LinkSet true_link_set(const HamiltonianSpec &spec);

enum class SubspaceClass : std::uint8_t { kIdentity, kObserved, kInteraction, kHidden };

/// Split of the basis into strings living on observed spins only (o), on hidden spins only (h)
/// and on both (i).
struct SubspacePartition {
    int n = 0;
    std::vector<int> observed;
    std::vector<SubspaceClass> classes;

    std::vector<std::size_t> indices(SubspaceClass cls) const;
    std::size_t count(SubspaceClass cls) const;
    int hidden_spin_count() const { return n - static_cast<int>(observed.size()); }
};

/// observed holds 0-based spin indices. Throws InputError when empty, out of range or repeated.
SubspacePartition partition_subspaces(int n, const std::vector<int> &observed);

}  // namespace henntomo

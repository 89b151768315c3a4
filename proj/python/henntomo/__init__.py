# Copyright 2026 The henntomo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the henntomo tomography library."""

import json

from ._henntomo import (
    Error,
    HamiltonianSpec,
    InputError,
    NumericError,
    TimeGrid,
    basis_label,
    classify,
    decompose,
    evolve,
    fidelity_t,
    gate_hamiltonian,
    generated_spec,
    initial_states,
    one_spin_sine,
    pauli_matrix,
    reconstruct,
    spec_from_json,
    three_spin_chain,
)
from ._henntomo import run as _run
from ._henntomo import sweep as _sweep

__version__ = "0.1.0"


def run(config, seed=1):
    """Runs one realization. `config` is a dict or a JSON string."""
    return _run(config if isinstance(config, str) else json.dumps(config), seed)


def sweep(config):
    return _sweep(config if isinstance(config, str) else json.dumps(config))

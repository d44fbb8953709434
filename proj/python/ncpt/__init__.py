# Copyright 2026 The ncpt Authors
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
"""Python bindings for the ncpt library."""

from ._ncpt import (
    NcptError,
    classical_min_error,
    min_error_over_orders,
    operation_orthocomplement,
    order_povm,
    sequence_distribution,
    simulate_counts,
    solve_p5,
    solve_pvm_detection,
    state_exists,
)

__all__ = [
    "NcptError",
    "classical_min_error",
    "min_error_over_orders",
    "operation_orthocomplement",
    "order_povm",
    "sequence_distribution",
    "simulate_counts",
    "solve_p5",
    "solve_pvm_detection",
    "state_exists",
]

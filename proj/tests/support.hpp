// Copyright 2026 The augfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <random>

#include "augfid/channels.hpp"
#include "augfid/distributions.hpp"

namespace augfid::testing {

using Map = std::function<ComplexMatrix(const ComplexMatrix &)>;

/// χ of an arbitrary linear map, through its Choi matrix:
/// χ_mn = ⟨⟨V_m| J |V_n⟩⟩ / d², J = Σ_ij E(|i⟩⟨j|) ⊗ |i⟩⟨j|.
ProcessMatrix chi_from_map(const Map &map, int n_qubits);

/// Σ_k K_k ρ K_k†
Map kraus_map(const std::vector<ComplexMatrix> &kraus);

/// Asymptotic Kolmogorov p-value for statistic d on n samples.
double ks_p_value(double d, std::size_t n);

/// sup |F_n - F| for a sample against a continuous CDF.
double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf);

/// CDF of t = center·x for the distribution.
double axis_cdf(const BlochDistribution &dist, double t);

RestrictedChi random_restricted(double chi00, std::mt19937_64 &gen);
PauliChannel random_pauli(double chi00, std::mt19937_64 &gen);
ComplexMatrix random_unitary(int dim, std::mt19937_64 &gen);
ComplexMatrix random_hermitian(int dim, std::mt19937_64 &gen);
/// Random CPTP channel with `rank` Kraus operators.
ProcessMatrix random_cptp(int n_qubits, int rank, std::mt19937_64 &gen);
/// Random pure-state density matrix.
ComplexMatrix random_pure_state(int dim, std::mt19937_64 &gen);

ComplexMatrix hadamard();

}  // namespace augfid::testing

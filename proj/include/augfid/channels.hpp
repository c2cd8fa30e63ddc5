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

#include <array>
#include <optional>
#include <string>

#include "augfid/linalg.hpp"
#include "augfid/rng.hpp"

namespace augfid {

/// Default absolute tolerance for CPTP checks; all inputs are O(1).
inline constexpr double kDefaultTolerance = 1e-10;

/// Process (χ) matrix of a map E(ρ) = Σ_kl χ_kl V_k ρ V_l† in the Pauli-product
/// basis of pauli_basis(n_qubits). Construction enforces shape and Hermiticity;
/// complete positivity and trace preservation are checked by validate().
class ProcessMatrix {
   public:
    ProcessMatrix(int n_qubits, ComplexMatrix chi);

    static ProcessMatrix identity(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    int dim() const { return static_cast<int>(chi_.rows()); }
    int hilbert_dim() const { return 1 << n_qubits_; }
    const ComplexMatrix &chi() const { return chi_; }
    Complex operator()(int k, int l) const { return chi_(k, l); }

   private:
    int n_qubits_;
    ComplexMatrix chi_;
};

/// Five-parameter single-qubit family: diagonal χ00..χ33, χ03 = χ30 real,
/// χ12 = -iχ03, χ21 = +iχ03, all other entries zero.
struct RestrictedChi {
    double chi00 = 1.0;
    double chi11 = 0.0;
    double chi22 = 0.0;
    double chi33 = 0.0;
    double chi03 = 0.0;
};

/// Diagonal χ: probabilities of applying I, X, Y, Z.
struct PauliChannel {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
};

struct ValidationReport {
    double hermiticity_defect = 0.0;
    double diag_sum_defect = 0.0;
    double min_eigenvalue = 0.0;
    /// Operator norm of Σ_kl χ_kl V_l† V_k - I.
    double tp_defect = 0.0;
    bool is_cp = false;
    bool is_tp = false;
};

enum class Axis { X, Y, Z };

struct NoiseBias {
    Axis axis = Axis::Z;
    /// +infinity when only the numerator is nonzero.
    double eta = 0.0;
};

enum class Extremum { Min, Max };

/// Table-1 style reference channels with χ00 = 0.985 and η_Z = 1/14.
PauliChannel pc1();
PauliChannel pc2();
/// Equal X/Y/Z rates (1 - chi00)/3.
PauliChannel depolarizing(double chi00);

void check_restricted(const RestrictedChi &rc, double tol = kStructureTolerance);
void check_pauli(const PauliChannel &pc, double tol = kStructureTolerance);

ProcessMatrix embed_restricted(const RestrictedChi &rc);
ProcessMatrix embed_pauli(const PauliChannel &pc);

ValidationReport validate(const ProcessMatrix &chi, double tol = kDefaultTolerance);

/// Σ_kl χ_kl V_k ρ V_l†. ρ must be a density matrix of matching dimension.
ComplexMatrix apply(const ProcessMatrix &chi, const ComplexMatrix &rho);

/// Linear extension of apply() to arbitrary operators (no density checks).
ComplexMatrix apply_linear(const ProcessMatrix &chi, const ComplexMatrix &x);

/// χ of ρ ↦ U† E_U(ρ) U, where chi_noisy is the process matrix of E_U.
ProcessMatrix compose_with_ideal_inverse(const ComplexMatrix &u, const ProcessMatrix &chi_noisy);

/// χ' of ρ ↦ R† E(R ρ R†) R. Averaging E over states centered on R(ẑ) equals
/// averaging χ' over the same distribution centered on ẑ.
ProcessMatrix conjugate_rotation(const ProcessMatrix &chi, const ComplexMatrix &r);

/// Real Pauli transfer matrix T_PQ = 2^-n Tr(P E(Q)).
RealMatrix transfer_matrix(const ProcessMatrix &chi);

/// With p = (1 - √χ00)²: (χ00, √p - p, √p - p, p, ∓(√p - p)); the lower sign
/// is the fidelity minimizer. Both PSD constraints are saturated.
RestrictedChi extremal_restricted(double chi00, Extremum sense);

/// Min puts the whole error weight on χ11, max on χ33.
PauliChannel extremal_pauli(double chi00, Extremum sense);

/// η_Z = χ33/(χ11+χ22); X and Y by cyclic substitution.
NoiseBias noise_bias(const PauliChannel &pc, Axis axis);

/// How off-diagonal entries of the random two-qubit ensemble are drawn.
enum class OffDiagonal { Complex, Real, Zero };

struct EnsembleOptions {
    OffDiagonal off_diagonal = OffDiagonal::Complex;
    /// Project out the off-diagonal combinations that violate trace
    /// preservation before the positivity test.
    bool project_tp = false;
};

struct AcceptedChi {
    ProcessMatrix chi;
    ValidationReport report;
};

/// One proposal of the random two-qubit ensemble: diagonal (chi0000, d1..d15)
/// with d uniform on the simplex of mass 1 - chi0000, off-diagonal parts
/// uniform in [-min d, min d], Hermitized. nullopt when the proposal is not
/// positive semidefinite. Trace preservation is reported, not enforced,
/// unless options.project_tp.
std::optional<AcceptedChi> random_two_qubit_chi(double chi0000, RngStream &rng, const EnsembleOptions &options = {});

/// Zero the TP-violating off-diagonal combinations of a Hermitian χ with unit
/// diagonal sum; the result satisfies Σ χ_kl V_l†V_k = I exactly.
ComplexMatrix project_trace_preserving(const ComplexMatrix &chi, int n_qubits);

std::string to_string(Axis axis);

}  // namespace augfid

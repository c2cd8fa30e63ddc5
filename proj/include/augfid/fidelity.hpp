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

#include <cmath>
#include <span>
#include <string>

#include "augfid/channels.hpp"
#include "augfid/distributions.hpp"

namespace augfid {

enum class Provenance { Analytic, Quadrature, MonteCarlo };

struct FidelityStats {
    double mean = 0.0;
    double variance = 0.0;
    /// Standard error of `mean`; 0 for exact analytics and quadrature.
    double std_error = 0.0;
    Provenance provenance = Provenance::Analytic;
    /// Standard error of `variance` (Monte-Carlo only).
    double variance_std_error = 0.0;
};

/// Clamp a mean into [0, 1] or a variance to [0, ∞) when it overshoots by at
/// most 1e-12; larger violations raise InternalConsistency.
double clamp_mean(double mean);
double clamp_variance(double variance);

/// Coefficients of the reduced fidelity
///   F̄ = 1/2 + a·4(χ00-χ33) + b·2(χ00-χ11-χ22+χ33) + c·8 Re χ03
/// for a distribution about ẑ. Uniform: a = b = 1/12, c = 0; point: a = 0, b = c = 1/4.
template <typename Real>
struct AxisWeights {
    Real a;
    Real b;
    Real c;
};

template <typename Real>
AxisWeights<Real> polar_cap_weights(Real theta) {
    using std::cos;
    using std::sin;
    const Real c = cos(theta);
    const Real h = sin(theta / 2);
    return {(2 + c) * h * h / 12, (1 + c + c * c) / 12, (1 + c) / 8};
}

template <typename Real>
AxisWeights<Real> vmf_weights(Real kappa) {
    using std::tanh;
    // l = κ coth κ - 1
    Real a;
    Real l;
    if (kappa < Real(0.05)) {
        const Real k2 = kappa * kappa;
        a = Real(1) / 12 - k2 / 180 + k2 * k2 / 1890 - k2 * k2 * k2 / 18900;
        l = 4 * k2 * a;
    } else {
        l = kappa > Real(700) ? kappa - 1 : kappa / tanh(kappa) - 1;
        a = l / (4 * kappa * kappa);
    }
    return {a, Real(1) / 4 - 2 * a, kappa < Real(0.05) ? kappa * a : l / (4 * kappa)};
}

/// Tr(ρ E(ρ)) with ρ = (I + v·σ)/2, evaluated by applying the channel.
double single_state_fidelity(const ProcessMatrix &chi, const BlochVector &v);

/// (2^n χ00 + 1)/(2^n + 1)
double uniform_avg(const ProcessMatrix &chi);

/// The Haar average from its operator-basis sum
///   (Σ_k Tr(U V_k† U† E_U(V_k)) + 4^n) / (4^n (2^n + 1)),
/// where chi_noisy is the process matrix of E_U.
double uniform_avg_trace_form(const ComplexMatrix &u, const ProcessMatrix &chi_noisy);

/// Average over the polar cap of half-angle theta_max about center. The
/// channel is rotated so that the center becomes ẑ, then the reduced form is
/// evaluated on the rotated entries.
double polar_cap_avg(const ProcessMatrix &chi, double theta_max, const BlochVector &center = {});

/// Average over vMF(κ) about center; series branch below κ = 0.05.
double vmf_avg(const ProcessMatrix &chi, double kappa, const BlochVector &center = {});

/// Dispatches on the distribution kind (single-qubit channels only).
double augmented_avg(const ProcessMatrix &chi, const BlochDistribution &dist);

/// Closed-form Var(F) under vMF(κ) about ẑ. Evaluated in extended precision;
/// multiprecision below κ = 0.5 where the 1/κ⁴ prefactor cancels.
double variance_vmf(const ProcessMatrix &chi, double kappa);

/// The polar-cap variance closed form exactly as printed in the appendix.
/// It does not vanish for constant-fidelity channels (identity gives -2), so
/// it is kept for auditing only.
double variance_polar_cap_closed_form(const ProcessMatrix &chi, double theta_max);

struct PolarCapVariance {
    /// Quadrature value; this is the one to use.
    double value = 0.0;
    double closed_form = 0.0;
    /// closed_form - value
    double closed_form_residual = 0.0;
};

/// Var(F) under the polar cap about ẑ. Θ < 1e-3 is treated as the point limit.
PolarCapVariance variance_polar_cap(const ProcessMatrix &chi, double theta_max);

/// Mean and variance of the single-state fidelity under `dist` by
/// deterministic quadrature: the azimuthal average is done in closed form
/// (the fidelity is quadratic in the Bloch vector), the polar one by adaptive
/// Gauss-Kronrod.
FidelityStats variance_quadrature_oracle(const ProcessMatrix &chi, const BlochDistribution &dist);

/// Quadrature mean and variance with one distribution per qubit (one or two qubits).
FidelityStats quadrature_oracle(const ProcessMatrix &chi, std::span<const BlochDistribution> dists);

/// Eq-17 style local-uniform two-qubit average:
/// (1 + 8χ_{00,00} + 2 Σ_{single-qubit Paulis P} χ_{P,P}) / 9.
double two_qubit_uniform_local(const ProcessMatrix &chi2);

/// Fast evaluator of Tr(ρ E(ρ)) on product states, via the Pauli transfer
/// matrix: F = 2^-n cᵀ T c with c = (1, v1) ⊗ ... ⊗ (1, vn).
class FidelityKernel {
   public:
    explicit FidelityKernel(const ProcessMatrix &chi);

    int n_qubits() const { return n_qubits_; }
    double operator()(const BlochVector &v) const;
    double operator()(const BlochVector &v1, const BlochVector &v2) const;
    double operator()(std::span<const BlochVector> states) const;

    const RealMatrix &transfer() const { return transfer_; }

   private:
    int n_qubits_;
    RealMatrix transfer_;
    Eigen::Matrix4d t1_;
    Eigen::Matrix<double, 16, 16> t2_;
};

std::string to_string(Provenance p);

}  // namespace augfid

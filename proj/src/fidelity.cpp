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

#include "augfid/fidelity.hpp"

#include <numbers>
#include <sstream>

namespace augfid {

namespace {

void require_single_qubit(const ProcessMatrix &chi, const char *what) {
    if (chi.n_qubits() != 1) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a single-qubit channel");
    }
}

bool is_plus_z(const BlochVector &v) { return v.x() == 0.0 && v.y() == 0.0 && v.z() > 0.0; }

ProcessMatrix to_z_frame(const ProcessMatrix &chi, const BlochVector &center) {
    require_unit(center);
    if (is_plus_z(center)) return chi;
    return conjugate_rotation(chi, spin_rotation_from_z(center));
}

double reduced_form(const ProcessMatrix &chi, const AxisWeights<double> &w) {
    const double c00 = chi(0, 0).real();
    const double c11 = chi(1, 1).real();
    const double c22 = chi(2, 2).real();
    const double c33 = chi(3, 3).real();
    const double re03 = chi(0, 3).real();
    return 0.5 + w.a * 4.0 * (c00 - c33) + w.b * 2.0 * (c00 - c11 - c22 + c33) + w.c * 8.0 * re03;
}

}  // namespace

double clamp_mean(double mean) {
    if (mean >= 0.0 && mean <= 1.0) return mean;
    if (mean >= -1e-12 && mean < 0.0) return 0.0;
    if (mean > 1.0 && mean <= 1.0 + 1e-12) return 1.0;
    std::ostringstream msg;
    msg << "fidelity mean " << mean << " outside [0, 1]";
    throw Error(ErrorKind::InternalConsistency, msg.str());
}

double clamp_variance(double variance) {
    if (variance >= 0.0) return variance;
    if (variance >= -1e-12) return 0.0;
    std::ostringstream msg;
    msg << "fidelity variance " << variance << " is negative";
    throw Error(ErrorKind::InternalConsistency, msg.str());
}

double single_state_fidelity(const ProcessMatrix &chi, const BlochVector &v) {
    require_single_qubit(chi, "single_state_fidelity");
    require_unit(v, 1e-10);
    ComplexMatrix rho = v.density_matrix();
    return (rho * apply_linear(chi, rho)).trace().real();
}

double uniform_avg(const ProcessMatrix &chi) {
    const double d = static_cast<double>(chi.hilbert_dim());
    return (d * chi(0, 0).real() + 1.0) / (d + 1.0);
}

double uniform_avg_trace_form(const ComplexMatrix &u, const ProcessMatrix &chi_noisy) {
    const int d = chi_noisy.hilbert_dim();
    if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::DimensionMismatch, "gate and channel dimensions differ");
    require_unitary(u);
    const auto &basis = pauli_basis(chi_noisy.n_qubits());
    Complex sum = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        sum += (u * basis[k].adjoint() * u.adjoint() * apply_linear(chi_noisy, basis[k])).trace();
    }
    const double d2 = static_cast<double>(d * d);
    return (sum.real() + d2) / (d2 * (d + 1.0));
}

double polar_cap_avg(const ProcessMatrix &chi, double theta_max, const BlochVector &center) {
    require_single_qubit(chi, "polar_cap_avg");
    if (!(theta_max > 0.0 && theta_max <= std::numbers::pi)) {
        throw Error(ErrorKind::OutOfRange, "polar cap angle must lie in (0, pi]");
    }
    return reduced_form(to_z_frame(chi, center), polar_cap_weights(theta_max));
}

double vmf_avg(const ProcessMatrix &chi, double kappa, const BlochVector &center) {
    require_single_qubit(chi, "vmf_avg");
    if (!(kappa > 0.0 && std::isfinite(kappa))) throw Error(ErrorKind::OutOfRange, "kappa must be finite and > 0");
    return reduced_form(to_z_frame(chi, center), vmf_weights(kappa));
}

double augmented_avg(const ProcessMatrix &chi, const BlochDistribution &dist) {
    require_single_qubit(chi, "augmented_avg");
    switch (dist.kind()) {
        case DistributionKind::Uniform: return uniform_avg(chi);
        case DistributionKind::PolarCap: return polar_cap_avg(chi, dist.theta_max(), dist.center());
        case DistributionKind::VonMisesFisher: return vmf_avg(chi, dist.kappa(), dist.center());
        case DistributionKind::Point: return single_state_fidelity(chi, dist.center());
    }
    return 0.0;
}

double two_qubit_uniform_local(const ProcessMatrix &chi2) {
    if (chi2.n_qubits() != 2) throw Error(ErrorKind::DimensionMismatch, "two_qubit_uniform_local needs a 2-qubit channel");
    // Index of σ_k ⊗ σ_l is 4k + l.
    double local = 0.0;
    for (int j = 1; j < 4; ++j) local += chi2(j, j).real() + chi2(4 * j, 4 * j).real();
    return (1.0 + 8.0 * chi2(0, 0).real() + 2.0 * local) / 9.0;
}

FidelityKernel::FidelityKernel(const ProcessMatrix &chi) : n_qubits_(chi.n_qubits()), transfer_(transfer_matrix(chi)) {
    t1_.setZero();
    t2_.setZero();
    if (n_qubits_ == 1) {
        t1_ = transfer_;
    } else {
        t2_ = transfer_;
    }
}

double FidelityKernel::operator()(const BlochVector &v) const {
    if (n_qubits_ != 1) throw Error(ErrorKind::DimensionMismatch, "kernel expects 2 states");
    const Eigen::Vector4d c(1.0, v.x(), v.y(), v.z());
    return 0.5 * c.dot(t1_ * c);
}

double FidelityKernel::operator()(const BlochVector &v1, const BlochVector &v2) const {
    if (n_qubits_ != 2) throw Error(ErrorKind::DimensionMismatch, "kernel expects 1 state");
    const double a[4] = {1.0, v1.x(), v1.y(), v1.z()};
    const double b[4] = {1.0, v2.x(), v2.y(), v2.z()};
    Eigen::Matrix<double, 16, 1> c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c(4 * i + j) = a[i] * b[j];
    return 0.25 * c.dot(t2_ * c);
}

double FidelityKernel::operator()(std::span<const BlochVector> states) const {
    if (static_cast<int>(states.size()) != n_qubits_) {
        throw Error(ErrorKind::DimensionMismatch, "one Bloch vector per qubit is required");
    }
    return n_qubits_ == 1 ? (*this)(states[0]) : (*this)(states[0], states[1]);
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Analytic: return "analytic";
        case Provenance::Quadrature: return "quadrature";
        case Provenance::MonteCarlo: return "monte_carlo";
    }
    return "?";
}

}  // namespace augfid

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

#include "augfid/channels.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace augfid {

namespace {

int dim_for(int n_qubits) {
    if (n_qubits != 1 && n_qubits != 2) {
        throw Error(ErrorKind::UnsupportedDimension, "process matrices are supported for 1 or 2 qubits, got " +
                                                         std::to_string(n_qubits));
    }
    return 1 << (2 * n_qubits);
}

// χ' for the operator substitution V_k ↦ left · V_k · right.
ProcessMatrix change_of_frame(const ProcessMatrix &chi, const ComplexMatrix &left, const ComplexMatrix &right) {
    const auto &basis = pauli_basis(chi.n_qubits());
    const int n = basis.size();
    const double norm = static_cast<double>(chi.hilbert_dim());
    ComplexMatrix m(n, n);
    for (int k = 0; k < n; ++k) {
        ComplexMatrix image = left * basis[k] * right;
        for (int j = 0; j < n; ++j) m(j, k) = (basis[j].adjoint() * image).trace() / norm;
    }
    ComplexMatrix out = m * chi.chi() * m.adjoint();
    // Restore exact Hermiticity lost to rounding.
    out = (out + out.adjoint()).eval() / 2.0;
    return ProcessMatrix(chi.n_qubits(), std::move(out));
}

void require_square(const ComplexMatrix &m, int dim, const char *what) {
    if (m.rows() != dim || m.cols() != dim) {
        std::ostringstream msg;
        msg << what << " must be " << dim << "x" << dim << ", got " << m.rows() << "x" << m.cols();
        throw Error(ErrorKind::DimensionMismatch, msg.str());
    }
}

struct PauliProduct {
    int index;
    Complex phase;
};

// table[l * n + k] describes V_l† V_k = phase · V_index.
const std::vector<PauliProduct> &product_table(int n_qubits) {
    auto build = [](int nq) {
        const auto &basis = pauli_basis(nq);
        const int n = basis.size();
        const double norm = static_cast<double>(basis.hilbert_dim());
        std::vector<PauliProduct> table(static_cast<std::size_t>(n * n));
        for (int l = 0; l < n; ++l) {
            for (int k = 0; k < n; ++k) {
                ComplexMatrix prod = basis[l].adjoint() * basis[k];
                for (int j = 0; j < n; ++j) {
                    Complex c = (basis[j].adjoint() * prod).trace() / norm;
                    if (std::abs(c) > 0.5) {
                        table[static_cast<std::size_t>(l * n + k)] = {j, c};
                        break;
                    }
                }
            }
        }
        return table;
    };
    static const std::vector<PauliProduct> one = build(1);
    static const std::vector<PauliProduct> two = build(2);
    return n_qubits == 1 ? one : two;
}

}  // namespace

ProcessMatrix::ProcessMatrix(int n_qubits, ComplexMatrix chi) : n_qubits_(n_qubits), chi_(std::move(chi)) {
    const int d = dim_for(n_qubits);
    require_square(chi_, d, "chi");
    if (!chi_.allFinite()) throw Error(ErrorKind::OutOfRange, "chi has non-finite entries");
    double defect = hermiticity_defect(chi_);
    if (defect > kStructureTolerance) {
        std::ostringstream msg;
        msg << "chi hermiticity defect " << defect;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }
}

ProcessMatrix ProcessMatrix::identity(int n_qubits) {
    const int d = dim_for(n_qubits);
    ComplexMatrix chi = ComplexMatrix::Zero(d, d);
    chi(0, 0) = 1.0;
    return ProcessMatrix(n_qubits, std::move(chi));
}

PauliChannel pc1() { return PauliChannel{{0.985, 0.012, 0.002, 0.001}}; }
PauliChannel pc2() { return PauliChannel{{0.985, 0.010, 0.004, 0.001}}; }

PauliChannel depolarizing(double chi00) {
    if (!(chi00 > 0.0 && chi00 <= 1.0)) throw Error(ErrorKind::OutOfRange, "chi00 must lie in (0, 1]");
    double q = (1.0 - chi00) / 3.0;
    return PauliChannel{{chi00, q, q, q}};
}

void check_restricted(const RestrictedChi &rc, double tol) {
    std::ostringstream msg;
    const double v[] = {rc.chi00, rc.chi11, rc.chi22, rc.chi33, rc.chi03};
    for (double x : v) {
        if (!std::isfinite(x)) throw Error(ErrorKind::InvalidRestrictedChi, "non-finite entry");
    }
    if (rc.chi00 < -tol || rc.chi11 < -tol || rc.chi22 < -tol || rc.chi33 < -tol) {
        throw Error(ErrorKind::InvalidRestrictedChi, "negative diagonal entry");
    }
    const double sum = rc.chi00 + rc.chi11 + rc.chi22 + rc.chi33;
    if (std::abs(sum - 1.0) > tol) {
        msg << "diagonal sums to " << sum;
        throw Error(ErrorKind::InvalidRestrictedChi, msg.str());
    }
    const double c2 = rc.chi03 * rc.chi03;
    if (rc.chi00 * rc.chi33 < c2 - tol || rc.chi11 * rc.chi22 < c2 - tol) {
        msg << "positivity requires chi00*chi33 >= chi03^2 and chi11*chi22 >= chi03^2 (chi03 = " << rc.chi03 << ")";
        throw Error(ErrorKind::InvalidRestrictedChi, msg.str());
    }
}

void check_pauli(const PauliChannel &pc, double tol) {
    double sum = 0.0;
    for (double p : pc.p) {
        if (!std::isfinite(p) || p < -tol) throw Error(ErrorKind::OutOfRange, "Pauli probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
        std::ostringstream msg;
        msg << "Pauli probabilities sum to " << sum;
        throw Error(ErrorKind::OutOfRange, msg.str());
    }
}

ProcessMatrix embed_restricted(const RestrictedChi &rc) {
    check_restricted(rc);
    using namespace std::complex_literals;
    ComplexMatrix chi = ComplexMatrix::Zero(4, 4);
    chi(0, 0) = rc.chi00;
    chi(1, 1) = rc.chi11;
    chi(2, 2) = rc.chi22;
    chi(3, 3) = rc.chi33;
    chi(0, 3) = rc.chi03;
    chi(3, 0) = rc.chi03;
    chi(1, 2) = -1i * rc.chi03;
    chi(2, 1) = 1i * rc.chi03;
    return ProcessMatrix(1, std::move(chi));
}

ProcessMatrix embed_pauli(const PauliChannel &pc) {
    check_pauli(pc);
    ComplexMatrix chi = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) chi(k, k) = pc.p[static_cast<std::size_t>(k)];
    return ProcessMatrix(1, std::move(chi));
}

ValidationReport validate(const ProcessMatrix &chi, double tol) {
    const auto &basis = pauli_basis(chi.n_qubits());
    const ComplexMatrix &m = chi.chi();
    ValidationReport r;
    r.hermiticity_defect = hermiticity_defect(m);
    r.diag_sum_defect = std::abs(m.trace() - Complex(1.0));
    ComplexMatrix herm = (m + m.adjoint()) / 2.0;
    r.min_eigenvalue = min_eigenvalue_hermitian(herm, std::numeric_limits<double>::infinity());

    const int d = chi.hilbert_dim();
    ComplexMatrix tp = -ComplexMatrix::Identity(d, d);
    for (int k = 0; k < basis.size(); ++k)
        for (int l = 0; l < basis.size(); ++l)
            if (m(k, l) != Complex(0.0)) tp += m(k, l) * basis[l].adjoint() * basis[k];
    r.tp_defect = operator_norm(tp);

    r.is_cp = r.min_eigenvalue >= -tol;
    r.is_tp = r.tp_defect <= tol;
    return r;
}

// E(X) = Σ_k V_k X W_k with W_k = Σ_l χ_kl V_l†.
ComplexMatrix apply_linear(const ProcessMatrix &chi, const ComplexMatrix &x) {
    const auto &basis = pauli_basis(chi.n_qubits());
    const int d = chi.hilbert_dim();
    require_square(x, d, "operator");
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < basis.size(); ++k) {
        ComplexMatrix w = ComplexMatrix::Zero(d, d);
        for (int l = 0; l < basis.size(); ++l) {
            if (chi(k, l) != Complex(0.0)) w += chi(k, l) * basis[l].adjoint();
        }
        out.noalias() += basis[k] * x * w;
    }
    return out;
}

ComplexMatrix apply(const ProcessMatrix &chi, const ComplexMatrix &rho) {
    const int d = chi.hilbert_dim();
    require_square(rho, d, "rho");
    constexpr double tol = 1e-10;
    if (hermiticity_defect(rho) > tol) throw Error(ErrorKind::InvalidDensityMatrix, "rho is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tol) throw Error(ErrorKind::InvalidDensityMatrix, "Tr rho != 1");
    if (min_eigenvalue_hermitian(rho, tol) < -tol) throw Error(ErrorKind::InvalidDensityMatrix, "rho is not PSD");
    return apply_linear(chi, rho);
}

ProcessMatrix compose_with_ideal_inverse(const ComplexMatrix &u, const ProcessMatrix &chi_noisy) {
    const int d = chi_noisy.hilbert_dim();
    require_square(u, d, "u");
    require_unitary(u);
    return change_of_frame(chi_noisy, u.adjoint(), ComplexMatrix::Identity(d, d));
}

ProcessMatrix conjugate_rotation(const ProcessMatrix &chi, const ComplexMatrix &r) {
    require_square(r, chi.hilbert_dim(), "rotation");
    require_unitary(r);
    return change_of_frame(chi, r.adjoint(), r);
}

RealMatrix transfer_matrix(const ProcessMatrix &chi) {
    const auto &basis = pauli_basis(chi.n_qubits());
    const int n = basis.size();
    const double norm = static_cast<double>(chi.hilbert_dim());
    RealMatrix t(n, n);
    for (int q = 0; q < n; ++q) {
        ComplexMatrix image = apply_linear(chi, basis[q]);
        for (int p = 0; p < n; ++p) t(p, q) = (basis[p] * image).trace().real() / norm;
    }
    return t;
}

RestrictedChi extremal_restricted(double chi00, Extremum sense) {
    if (!(chi00 > 0.0 && chi00 <= 1.0)) throw Error(ErrorKind::OutOfRange, "chi00 must lie in (0, 1]");
    // √p = 1 - √χ00, so √p - p = √χ00 (1 - √χ00).
    const double s = std::sqrt(chi00);
    const double q = 1.0 - s;
    const double off = s * q;
    RestrictedChi rc{chi00, off, off, q * q, sense == Extremum::Min ? -off : off};
    return rc;
}

PauliChannel extremal_pauli(double chi00, Extremum sense) {
    if (!(chi00 > 0.0 && chi00 <= 1.0)) throw Error(ErrorKind::OutOfRange, "chi00 must lie in (0, 1]");
    if (sense == Extremum::Min) return PauliChannel{{chi00, 1.0 - chi00, 0.0, 0.0}};
    return PauliChannel{{chi00, 0.0, 0.0, 1.0 - chi00}};
}

NoiseBias noise_bias(const PauliChannel &pc, Axis axis) {
    check_pauli(pc);
    const auto &p = pc.p;
    double num = 0.0, den = 0.0;
    switch (axis) {
        case Axis::X: num = p[1]; den = p[2] + p[3]; break;
        case Axis::Y: num = p[2]; den = p[3] + p[1]; break;
        case Axis::Z: num = p[3]; den = p[1] + p[2]; break;
    }
    if (den == 0.0) {
        if (num == 0.0) throw Error(ErrorKind::UndefinedBias, "noise bias is 0/0 along " + to_string(axis));
        return NoiseBias{axis, std::numeric_limits<double>::infinity()};
    }
    return NoiseBias{axis, num / den};
}

ComplexMatrix project_trace_preserving(const ComplexMatrix &chi, int n_qubits) {
    const int n = dim_for(n_qubits);
    require_square(chi, n, "chi");
    const auto &table = product_table(n_qubits);
    std::vector<Complex> sums(static_cast<std::size_t>(n), Complex(0.0));
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k) {
            if (k == l) continue;
            const auto &pp = table[static_cast<std::size_t>(l * n + k)];
            sums[static_cast<std::size_t>(pp.index)] += pp.phase * chi(k, l);
            ++counts[static_cast<std::size_t>(pp.index)];
        }
    }
    ComplexMatrix out = chi;
    for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k) {
            if (k == l) continue;
            const auto &pp = table[static_cast<std::size_t>(l * n + k)];
            const auto j = static_cast<std::size_t>(pp.index);
            out(k, l) -= std::conj(pp.phase) * sums[j] / static_cast<double>(counts[j]);
        }
    }
    return out;
}

std::optional<AcceptedChi> random_two_qubit_chi(double chi0000, RngStream &rng, const EnsembleOptions &options) {
    if (!(chi0000 > 0.0 && chi0000 <= 1.0)) throw Error(ErrorKind::OutOfRange, "chi0000 must lie in (0, 1]");
    constexpr int n = 16;
    std::array<double, n - 1> d{};
    double total = 0.0;
    for (double &x : d) {
        x = -std::log(rng.uniform_open());
        total += x;
    }
    double m = std::numeric_limits<double>::infinity();
    for (double &x : d) {
        x *= (1.0 - chi0000) / total;
        m = std::min(m, x);
    }

    ComplexMatrix chi = ComplexMatrix::Zero(n, n);
    chi(0, 0) = chi0000;
    for (int k = 1; k < n; ++k) chi(k, k) = d[static_cast<std::size_t>(k - 1)];
    if (options.off_diagonal != OffDiagonal::Zero) {
        for (int k = 0; k < n; ++k) {
            for (int l = k + 1; l < n; ++l) {
                double re = m * (2.0 * rng.uniform() - 1.0);
                double im = options.off_diagonal == OffDiagonal::Complex ? m * (2.0 * rng.uniform() - 1.0) : 0.0;
                chi(k, l) = Complex(re, im);
                chi(l, k) = Complex(re, -im);
            }
        }
    }
    if (options.project_tp) chi = project_trace_preserving(chi, 2);

    if (min_eigenvalue_hermitian(chi) < 0.0) return std::nullopt;
    ProcessMatrix pm(2, std::move(chi));
    ValidationReport report = validate(pm);
    return AcceptedChi{std::move(pm), report};
}

std::string to_string(Axis axis) {
    switch (axis) {
        case Axis::X: return "X";
        case Axis::Y: return "Y";
        case Axis::Z: return "Z";
    }
    return "?";
}

}  // namespace augfid

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

#include "augfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace augfid {

const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidRestrictedChi: return "InvalidRestrictedChi";
        case ErrorKind::InvalidDensityMatrix: return "InvalidDensityMatrix";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotUnitVector: return "NotUnitVector";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::UndefinedBias: return "UndefinedBias";
        case ErrorKind::PointHasNoDensity: return "PointHasNoDensity";
        case ErrorKind::InternalConsistency: return "InternalConsistency";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

void require_unitary(const ComplexMatrix &u, double tol) {
    double defect = unitarity_defect(u);
    if (defect > tol) {
        std::ostringstream msg;
        msg << "|u^dag u - I| = " << defect << " exceeds " << tol;
        throw Error(ErrorKind::NotUnitary, msg.str());
    }
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h, double tol) {
    double defect = hermiticity_defect(h);
    if (!(defect <= tol)) {
        std::ostringstream msg;
        msg << "max |h_ij - conj(h_ji)| = " << defect << " exceeds " << tol;
        throw Error(ErrorKind::NotHermitian, msg.str());
    }
    const Eigen::Index n = h.rows();
    ComplexMatrix a = (h + h.adjoint()) / 2.0;

    auto off_norm2 = [&]() {
        double s = 0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return s;
    };
    const double scale2 = std::max(a.squaredNorm(), 1e-300);

    for (int sweep = 0; sweep < 100 && off_norm2() > 1e-34 * scale2; ++sweep) {
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < 1e-300) continue;
                // Phase e^{iφ} of a_pq; the rotation G = diag(1, e^{-iφ}) R
                // reduces the (p,q) block to a real symmetric one.
                const Complex phase = a(p, q) / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex sp = s * std::conj(phase);  // s e^{-iφ}
                const Complex cp = c * std::conj(phase);  // c e^{-iφ}
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - sp * akq;
                    a(k, q) = s * akp + cp * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - std::conj(sp) * aqk;
                    a(q, k) = s * apk + std::conj(cp) * aqk;
                }
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                a(p, q) = 0;
                a(q, p) = 0;
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_eigenvalue_hermitian(const ComplexMatrix &h, double tol) {
    auto eig = hermitian_eigenvalues(h, tol);
    return eig.front();
}

double operator_norm(const ComplexMatrix &m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

namespace {

std::vector<ComplexMatrix> make_paulis() {
    using namespace std::complex_literals;
    std::vector<ComplexMatrix> s(4, ComplexMatrix::Zero(2, 2));
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -1i, 1i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
}

PauliBasis make_basis(int n) {
    const auto &s = make_paulis();
    PauliBasis basis;
    basis.n_qubits = n;
    if (n == 1) {
        basis.elements = s;
    } else {
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) basis.elements.push_back(kron(s[a], s[b]));
    }
    return basis;
}

}  // namespace

const PauliBasis &pauli_basis(int n_qubits) {
    static const PauliBasis one = make_basis(1);
    static const PauliBasis two = make_basis(2);
    if (n_qubits == 1) return one;
    if (n_qubits == 2) return two;
    throw Error(ErrorKind::UnsupportedDimension,
                "Pauli basis is available for 1 or 2 qubits, got " + std::to_string(n_qubits));
}

const ComplexMatrix &pauli(int k) { return pauli_basis(1)[k]; }

}  // namespace augfid

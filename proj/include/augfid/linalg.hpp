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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "augfid/error.hpp"

namespace augfid {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

/// Absolute tolerance used for Hermiticity and unitarity preconditions.
inline constexpr double kStructureTolerance = 1e-12;

/// Kronecker product a ⊗ b. Row index of the result is i_a * rows(b) + i_b.
template <typename A, typename B>
Matrix<typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType>
kron(const Eigen::MatrixBase<A> &a, const Eigen::MatrixBase<B> &b) {
    using Scalar = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType;
    Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                Scalar(a(i, j)) * b.template cast<Scalar>();
        }
    }
    return out;
}

/// max_ij |h_ij - conj(h_ji)|
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived> &h) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "hermiticity check needs a square matrix");
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// max_ij |(u† u - I)_ij|
template <typename Derived>
typename Derived::RealScalar unitarity_defect(const Eigen::MatrixBase<Derived> &u) {
    if (u.rows() != u.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "unitarity check needs a square matrix");
    }
    using Plain = typename Derived::PlainObject;
    return (u.adjoint() * u - Plain::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

void require_unitary(const ComplexMatrix &u, double tol = kStructureTolerance);

/// All eigenvalues of a Hermitian matrix in ascending order, computed by
/// cyclic complex Jacobi rotations. Throws NotHermitian when
/// hermiticity_defect(h) > tol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h, double tol = kStructureTolerance);

double min_eigenvalue_hermitian(const ComplexMatrix &h, double tol = kStructureTolerance);

/// Largest singular value.
double operator_norm(const ComplexMatrix &m);

/// Pauli-product operator basis on n qubits. Element k is
/// σ_{k1} ⊗ ... ⊗ σ_{kn} where (k1 ... kn) are the base-4 digits of k,
/// most significant digit on the first qubit.
struct PauliBasis {
    int n_qubits = 0;
    std::vector<ComplexMatrix> elements;

    int size() const { return static_cast<int>(elements.size()); }
    int hilbert_dim() const { return 1 << n_qubits; }
    const ComplexMatrix &operator[](int k) const { return elements[static_cast<std::size_t>(k)]; }
};

/// The basis for n ∈ {1, 2}; the returned reference is to an immutable,
/// process-wide instance.
const PauliBasis &pauli_basis(int n_qubits);

/// σ0..σ3 as 2x2 matrices.
const ComplexMatrix &pauli(int k);

}  // namespace augfid

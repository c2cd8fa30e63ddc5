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

#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace augfid::testing {

ProcessMatrix chi_from_map(const Map &map, int n_qubits) {
    const PauliBasis &basis = pauli_basis(n_qubits);
    const int d = basis.hilbert_dim();
    ComplexMatrix choi = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(d, d);
            e(i, j) = 1.0;
            choi += kron(map(e), e);
        }
    }
    // |A⟩⟩ = Σ_i A|i⟩ ⊗ |i⟩
    std::vector<Eigen::VectorXcd> vecs;
    for (int k = 0; k < basis.size(); ++k) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
        for (int i = 0; i < d; ++i) {
            for (int r = 0; r < d; ++r) v(r * d + i) = basis[k](r, i);
        }
        vecs.push_back(v);
    }
    ComplexMatrix chi(basis.size(), basis.size());
    for (int m = 0; m < basis.size(); ++m) {
        for (int n = 0; n < basis.size(); ++n) chi(m, n) = vecs[m].dot(choi * vecs[n]) / double(d * d);
    }
    chi = 0.5 * (chi + chi.adjoint()).eval();
    return ProcessMatrix(n_qubits, chi);
}

Map kraus_map(const std::vector<ComplexMatrix> &kraus) {
    return [kraus](const ComplexMatrix &rho) {
        ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
        for (const auto &k : kraus) out += k * rho * k.adjoint();
        return out;
    };
}

double ks_p_value(double d, std::size_t n) {
    const double sn = std::sqrt(double(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * d;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

double ks_statistic(std::vector<double> xs, const std::function<double(double)> &cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = double(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    return d;
}

double axis_cdf(const BlochDistribution &dist, double t) {
    t = std::clamp(t, -1.0, 1.0);
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            return 0.5 * (t + 1.0);
        case DistributionKind::PolarCap: {
            const double c = std::cos(dist.theta_max());
            return t <= c ? 0.0 : (t - c) / (1.0 - c);
        }
        case DistributionKind::VonMisesFisher: {
            const double k = dist.kappa();
            // (e^{κt} - e^{-κ}) / (e^{κ} - e^{-κ})
            return std::exp(k * (t - 1.0)) * (-std::expm1(-k * (t + 1.0))) / (-std::expm1(-2.0 * k));
        }
        case DistributionKind::Point:
            return t < 1.0 ? 0.0 : 1.0;
    }
    return 0.0;
}

RestrictedChi random_restricted(double chi00, std::mt19937_64 &gen) {
    std::exponential_distribution<double> ex;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double e1 = ex(gen), e2 = ex(gen), e3 = ex(gen);
    const double rest = 1.0 - chi00, s = e1 + e2 + e3;
    RestrictedChi rc;
    rc.chi00 = chi00;
    rc.chi11 = rest * e1 / s;
    rc.chi22 = rest * e2 / s;
    rc.chi33 = rest - rc.chi11 - rc.chi22;
    const double bound = std::sqrt(std::min(rc.chi00 * rc.chi33, rc.chi11 * rc.chi22));
    rc.chi03 = bound * u(gen);
    return rc;
}

PauliChannel random_pauli(double chi00, std::mt19937_64 &gen) {
    std::exponential_distribution<double> ex;
    const double e1 = ex(gen), e2 = ex(gen), e3 = ex(gen);
    const double rest = 1.0 - chi00, s = e1 + e2 + e3;
    PauliChannel pc;
    pc.p = {chi00, rest * e1 / s, rest * e2 / s, 0.0};
    pc.p[3] = rest - pc.p[1] - pc.p[2];
    return pc;
}

namespace {

ComplexMatrix gaussian(int rows, int cols, std::mt19937_64 &gen) {
    std::normal_distribution<double> n;
    ComplexMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) g(i, j) = Complex(n(gen), n(gen));
    }
    return g;
}

}  // namespace

ComplexMatrix random_unitary(int dim, std::mt19937_64 &gen) {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(dim, dim, gen));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

ComplexMatrix random_hermitian(int dim, std::mt19937_64 &gen) {
    const ComplexMatrix g = gaussian(dim, dim, gen);
    return 0.5 * (g + g.adjoint());
}

ProcessMatrix random_cptp(int n_qubits, int rank, std::mt19937_64 &gen) {
    const int d = 1 << n_qubits;
    // Isometry d -> d·rank, cut into Kraus blocks.
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(d * rank, d, gen));
    const ComplexMatrix v = qr.householderQ() * ComplexMatrix::Identity(d * rank, d);
    std::vector<ComplexMatrix> kraus;
    for (int k = 0; k < rank; ++k) kraus.push_back(v.block(k * d, 0, d, d));
    return chi_from_map(kraus_map(kraus), n_qubits);
}

ComplexMatrix random_pure_state(int dim, std::mt19937_64 &gen) {
    Eigen::VectorXcd psi = gaussian(dim, 1, gen);
    psi.normalize();
    return psi * psi.adjoint();
}

ComplexMatrix hadamard() {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

}  // namespace augfid::testing

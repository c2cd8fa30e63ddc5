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

#include "augfid/montecarlo.hpp"

#include "augfid/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>

namespace augfid {

namespace {

// Power sums of d = F - shift over one chunk.
struct PowerSums {
    std::size_t n = 0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;

    void add(double d) {
        const double d2 = d * d;
        ++n;
        s1 += d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    void merge(const PowerSums &o) {
        n += o.n;
        s1 += o.s1;
        s2 += o.s2;
        s3 += o.s3;
        s4 += o.s4;
    }
};

void require_grid(std::span<const double> grid) {
    if (grid.empty()) throw Error(ErrorKind::OutOfRange, "parameter grid is empty");
}

void require_chi00(double chi00) {
    if (!(chi00 > 0.0 && chi00 <= 1.0)) throw Error(ErrorKind::OutOfRange, "chi00 must lie in (0, 1]");
}

std::array<PauliChannel, 3> pauli_vertices(double chi00) {
    std::array<PauliChannel, 3> out;
    for (int j = 0; j < 3; ++j) {
        out[j].p = {chi00, 0.0, 0.0, 0.0};
        out[j].p[j + 1] = 1.0 - chi00;
    }
    return out;
}

// E[c cᵀ] with c = (1, v) for a distribution about ẑ.
Eigen::Matrix4d axis_moment_matrix(const BlochDistribution &dist) {
    const double m1 = dist.kind() == DistributionKind::Point ? 1.0 : mean_axis_moment(dist, 1);
    const double m2 = dist.kind() == DistributionKind::Point ? 1.0 : mean_axis_moment(dist, 2);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    m(0, 3) = m(3, 0) = m1;
    m(1, 1) = m(2, 2) = 0.5 * (1.0 - m2);
    m(3, 3) = m2;
    return m;
}

Eigen::Vector4d homogeneous(const BlochVector &v) { return {1.0, v.x(), v.y(), v.z()}; }

}  // namespace

FidelityStats mc_fidelity(const ProcessMatrix &chi, std::span<const BlochDistribution> dists, std::size_t n_samples,
                          const RngStream &rng, int workers) {
    if (static_cast<int>(dists.size()) != chi.n_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "need one distribution per qubit");
    }
    if (n_samples < 100) throw Error(ErrorKind::OutOfRange, "n_samples must be at least 100");

    const FidelityKernel kernel(chi);
    std::vector<BlochVector> centers;
    for (const auto &d : dists) centers.push_back(d.center());
    const double shift = kernel(std::span<const BlochVector>(centers));

    const std::size_t n_chunks = (n_samples + kMcChunk - 1) / kMcChunk;
    std::vector<PowerSums> chunks(n_chunks);
    parallel_for(n_chunks, workers, [&](std::size_t k) {
        RngStream stream = rng.split(k);
        const std::size_t count = std::min(kMcChunk, n_samples - k * kMcChunk);
        std::vector<BlochVector> states(dists.size());
        PowerSums sums;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t q = 0; q < dists.size(); ++q) states[q] = sample(dists[q], stream);
            sums.add(kernel(std::span<const BlochVector>(states)) - shift);
        }
        chunks[k] = sums;
    });

    PowerSums total;
    for (const auto &c : chunks) total.merge(c);
    const double n = static_cast<double>(total.n);
    const double mu = total.s1 / n;
    const double e2 = total.s2 / n, e3 = total.s3 / n, e4 = total.s4 / n;
    const double m2 = std::max(0.0, e2 - mu * mu);
    const double m4 = std::max(0.0, e4 - 4.0 * mu * e3 + 6.0 * mu * mu * e2 - 3.0 * mu * mu * mu * mu);

    FidelityStats stats;
    stats.provenance = Provenance::MonteCarlo;
    stats.mean = clamp_mean(shift + mu);
    stats.variance = m2 * n / (n - 1.0);
    stats.std_error = std::sqrt(stats.variance / n);
    stats.variance_std_error = std::sqrt(std::max(0.0, (m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n));
    return stats;
}

std::vector<double> default_grid(Family family) {
    std::vector<double> grid(50);
    for (int i = 0; i < 50; ++i) {
        if (family == Family::PolarCap) {
            grid[i] = std::numbers::pi * (i + 1) / 50.0;
        } else {
            grid[i] = std::pow(10.0, -2.0 + 4.0 * i / 49.0);
        }
    }
    return grid;
}

EnvelopeResult envelope_curve(double chi00, Family family, std::span<const double> grid, const BlochVector &center) {
    require_chi00(chi00);
    require_grid(grid);
    require_unit(center);

    // Carry the ẑ-aligned extremal channels onto `center`.
    const ComplexMatrix r = spin_rotation_from_z(center).adjoint();
    const ProcessMatrix lo = conjugate_rotation(embed_restricted(extremal_restricted(chi00, Extremum::Min)), r);
    const ProcessMatrix hi = conjugate_rotation(embed_restricted(extremal_restricted(chi00, Extremum::Max)), r);
    std::vector<ProcessMatrix> vertices;
    for (const auto &v : pauli_vertices(chi00)) vertices.push_back(embed_pauli(v));

    EnvelopeResult out;
    out.family = family;
    out.grid.assign(grid.begin(), grid.end());
    out.depolarizing_level = (2.0 * chi00 + 1.0) / 3.0;
    for (double p : grid) {
        const BlochDistribution dist = BlochDistribution::of_family(family, p, center);
        out.min_curve.push_back(augmented_avg(lo, dist));
        out.max_curve.push_back(augmented_avg(hi, dist));
        out.min_err.push_back(std::sqrt(variance_quadrature_oracle(lo, dist).variance));
        out.max_err.push_back(std::sqrt(variance_quadrature_oracle(hi, dist).variance));
        double pmin = 1.0, pmax = 0.0;
        for (const auto &v : vertices) {
            const double f = augmented_avg(v, dist);
            pmin = std::min(pmin, f);
            pmax = std::max(pmax, f);
        }
        out.pauli_min_curve.push_back(pmin);
        out.pauli_max_curve.push_back(pmax);
    }
    return out;
}

std::vector<BiasRow> bias_curves(std::span<const NamedPauliChannel> channels, std::span<const BlochVector> centers,
                                 Family family, std::span<const double> grid) {
    require_grid(grid);
    if (channels.empty()) throw Error(ErrorKind::OutOfRange, "no channels given");
    std::vector<NamedPauliChannel> all(channels.begin(), channels.end());
    all.push_back({"depolarizing", depolarizing(channels.front().channel.p[0])});

    std::vector<BiasRow> rows;
    for (const auto &center : centers) {
        require_unit(center);
        for (const auto &ch : all) {
            const ProcessMatrix chi = embed_pauli(ch.channel);
            for (double p : grid) {
                rows.push_back({p, ch.id, center, augmented_avg(chi, BlochDistribution::of_family(family, p, center))});
            }
        }
    }
    return rows;
}

std::vector<ProcessMatrix> two_qubit_ensemble(double chi0000, std::size_t n_proposals, std::uint64_t seed,
                                              const EnsembleOptions &options) {
    require_chi00(chi0000);
    if (n_proposals < 1) throw Error(ErrorKind::OutOfRange, "n_proposals must be at least 1");
    RngStream proposals(seed, derive_stream_id({0x656e73656d626c65ULL}));
    std::vector<ProcessMatrix> out;
    for (std::size_t i = 0; i < n_proposals; ++i) {
        if (auto accepted = random_two_qubit_chi(chi0000, proposals, options)) out.push_back(accepted->chi);
    }
    return out;
}

HeatmapGrid two_qubit_heatmap(double chi0000, std::size_t n_proposals, Family family, std::span<const double> grid1,
                              std::span<const double> grid2, std::uint64_t seed, const HeatmapOptions &options) {
    require_grid(grid1);
    require_grid(grid2);
    if (options.method == HeatmapMethod::MonteCarlo && options.n_mc < 1) {
        throw Error(ErrorKind::OutOfRange, "n_mc must be at least 1");
    }
    const std::vector<ProcessMatrix> ensemble = two_qubit_ensemble(chi0000, n_proposals, seed, options.ensemble);

    HeatmapGrid out;
    out.family = family;
    out.axis1.assign(grid1.begin(), grid1.end());
    out.axis2.assign(grid2.begin(), grid2.end());
    out.ensemble_size = ensemble.size();
    out.n_proposals = n_proposals;
    out.seed = seed;
    const std::size_t n1 = grid1.size(), n2 = grid2.size();
    out.min_surface.assign(n1 * n2, std::numeric_limits<double>::quiet_NaN());
    out.max_surface.assign(n1 * n2, std::numeric_limits<double>::quiet_NaN());
    if (ensemble.empty()) return out;

    std::vector<RealMatrix> transfers;
    for (const auto &chi : ensemble) transfers.push_back(transfer_matrix(chi));

    std::vector<BlochDistribution> d1, d2;
    for (double p : grid1) d1.push_back(BlochDistribution::of_family(family, p));
    for (double p : grid2) d2.push_back(BlochDistribution::of_family(family, p));

    parallel_for(n1 * n2, options.workers, [&](std::size_t cell) {
        const std::size_t i = cell / n2, j = cell % n2;
        // F = 2⁻² cᵀ T c with c = (1, v₁) ⊗ (1, v₂); only E[c cᵀ] is needed.
        Eigen::Matrix<double, 16, 16> moments;
        if (options.method == HeatmapMethod::Moments) {
            moments = kron(axis_moment_matrix(d1[i]), axis_moment_matrix(d2[j]));
        } else {
            RngStream stream(seed, derive_stream_id({0x63656c6cULL, i, j}));
            moments.setZero();
            for (std::size_t s = 0; s < options.n_mc; ++s) {
                const Eigen::Vector4d a = homogeneous(sample(d1[i], stream));
                const Eigen::Vector4d b = homogeneous(sample(d2[j], stream));
                Eigen::Matrix<double, 16, 1> c;
                for (int x = 0; x < 4; ++x) c.segment<4>(4 * x) = a(x) * b;
                moments.selfadjointView<Eigen::Lower>().rankUpdate(c);
            }
            moments = moments.selfadjointView<Eigen::Lower>();
            moments /= static_cast<double>(options.n_mc);
        }
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto &t : transfers) {
            const double f = 0.25 * (t.array() * moments.array()).sum();
            lo = std::min(lo, f);
            hi = std::max(hi, f);
        }
        out.min_surface[cell] = lo;
        out.max_surface[cell] = hi;
    });
    return out;
}

}  // namespace augfid

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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "augfid/channels.hpp"
#include "augfid/distributions.hpp"
#include "augfid/fidelity.hpp"
#include "augfid/rng.hpp"

namespace augfid {

/// Samples per substream. Chunk k always draws from rng.split(k), so results do
/// not depend on the number of workers.
inline constexpr std::size_t kMcChunk = 65536;

/// Monte-Carlo estimate of the augmented fidelity with one distribution per qubit.
FidelityStats mc_fidelity(const ProcessMatrix &chi, std::span<const BlochDistribution> dists, std::size_t n_samples,
                          const RngStream &rng, int workers = 1);

std::vector<double> default_grid(Family family);

struct EnvelopeResult {
    Family family = Family::PolarCap;
    std::vector<double> grid;
    std::vector<double> min_curve;
    std::vector<double> max_curve;
    std::vector<double> min_err;
    std::vector<double> max_err;
    /// Pointwise extremes over Pauli channels with the same χ00.
    std::vector<double> pauli_min_curve;
    std::vector<double> pauli_max_curve;
    double depolarizing_level = 0.0;
};

EnvelopeResult envelope_curve(double chi00, Family family, std::span<const double> grid,
                              const BlochVector &center = {});

struct NamedPauliChannel {
    std::string id;
    PauliChannel channel;
};

struct BiasRow {
    double param;
    std::string channel_id;
    BlochVector center;
    double fidelity;
};

/// Rows ordered by center, then channel, then grid point. A reference channel
/// with id "depolarizing" and the χ00 of the first channel is appended per center.
std::vector<BiasRow> bias_curves(std::span<const NamedPauliChannel> channels, std::span<const BlochVector> centers,
                                 Family family, std::span<const double> grid);

enum class HeatmapMethod {
    MonteCarlo,
    /// Exact product-state moments; no sampling.
    Moments,
};

struct HeatmapOptions {
    std::size_t n_mc = 20000;
    int workers = 1;
    HeatmapMethod method = HeatmapMethod::MonteCarlo;
    EnsembleOptions ensemble{};
};

struct HeatmapGrid {
    Family family = Family::PolarCap;
    std::vector<double> axis1;
    std::vector<double> axis2;
    /// Row-major, index i * axis2.size() + j.
    std::vector<double> min_surface;
    std::vector<double> max_surface;
    std::size_t ensemble_size = 0;
    std::size_t n_proposals = 0;
    std::uint64_t seed = 0;

    double min_at(std::size_t i, std::size_t j) const { return min_surface[i * axis2.size() + j]; }
    double max_at(std::size_t i, std::size_t j) const { return max_surface[i * axis2.size() + j]; }
};

/// Draws the ensemble from a dedicated stream of `seed`, then estimates every
/// (cell, channel) pair. Within a cell all channels share one sample set.
HeatmapGrid two_qubit_heatmap(double chi0000, std::size_t n_proposals, Family family, std::span<const double> grid1,
                              std::span<const double> grid2, std::uint64_t seed, const HeatmapOptions &options = {});

/// Accepted ensemble for the given seed, as used by two_qubit_heatmap.
std::vector<ProcessMatrix> two_qubit_ensemble(double chi0000, std::size_t n_proposals, std::uint64_t seed,
                                              const EnsembleOptions &options = {});

}  // namespace augfid

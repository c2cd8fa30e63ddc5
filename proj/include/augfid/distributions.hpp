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

#include <string>

#include <Eigen/Dense>

#include "augfid/linalg.hpp"
#include "augfid/rng.hpp"

namespace augfid {

/// Real 3-vector (⟨σ1⟩, ⟨σ2⟩, ⟨σ3⟩). Pure states have unit norm.
class BlochVector {
   public:
    BlochVector() : v_(0.0, 0.0, 1.0) {}
    BlochVector(double x, double y, double z) : v_(x, y, z) {}
    explicit BlochVector(const Eigen::Vector3d &v) : v_(v) {}

    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }
    const Eigen::Vector3d &vec() const { return v_; }
    double dot(const BlochVector &o) const { return v_.dot(o.v_); }
    bool is_unit(double tol = kStructureTolerance) const { return std::abs(v_.squaredNorm() - 1.0) <= tol; }

    /// (I + v·σ)/2
    ComplexMatrix density_matrix() const;

   private:
    Eigen::Vector3d v_;
};

void require_unit(const BlochVector &v, double tol = kStructureTolerance);

/// Rotation in SO(3) taking ẑ to mu: Rodrigues rotation about ẑ × mu, and the
/// π rotation about x̂ when mu = -ẑ.
Eigen::Matrix3d rotation_from_z(const BlochVector &mu);

/// The SU(2) element R with R σ_z R† = mu·σ that implements rotation_from_z.
ComplexMatrix spin_rotation_from_z(const BlochVector &mu);

enum class DistributionKind { Uniform, PolarCap, VonMisesFisher, Point };

/// The two parametrized families.
enum class Family { PolarCap, VonMisesFisher };

class BlochDistribution {
   public:
    static BlochDistribution uniform(const BlochVector &center = {});
    /// Uniform on the cap of colatitude <= theta_max about center; theta_max ∈ (0, π].
    static BlochDistribution polar_cap(double theta_max, const BlochVector &center = {});
    /// Density κ/(4π sinh κ) exp(κ center·x); κ finite and > 0.
    static BlochDistribution von_mises_fisher(double kappa, const BlochVector &center = {});
    static BlochDistribution point(const BlochVector &center = {});
    static BlochDistribution of_family(Family family, double parameter, const BlochVector &center = {});

    DistributionKind kind() const { return kind_; }
    /// Θ for PolarCap, κ for VonMisesFisher, 0 otherwise.
    double parameter() const { return parameter_; }
    double theta_max() const { return parameter_; }
    double kappa() const { return parameter_; }
    const BlochVector &center() const { return center_; }

   private:
    BlochDistribution(DistributionKind kind, double parameter, const BlochVector &center);

    DistributionKind kind_;
    double parameter_;
    BlochVector center_;
};

/// Draws cos θ about the center by inverse CDF, φ uniformly, then rotates ẑ
/// onto the center.
BlochVector sample(const BlochDistribution &dist, RngStream &rng);

/// Log surface density at unit vector v. PolarCap gives -inf outside the cap.
double log_pdf(const BlochDistribution &dist, const BlochVector &v);

/// E[(center·x)^order] for order ∈ {1, 2}.
double mean_axis_moment(const BlochDistribution &dist, int order);

BlochDistribution recenter(const BlochDistribution &dist, const BlochVector &mu);

std::string to_string(DistributionKind kind);
std::string to_string(Family family);

}  // namespace augfid

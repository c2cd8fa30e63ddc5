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

#include "augfid/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace augfid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSmallKappa = 0.05;
constexpr double kLargeKappa = 700.0;

// 1 - cos Θ without cancellation for small Θ.
double one_minus_cos(double theta) {
    double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

// coth κ - 1/κ
double langevin(double kappa) {
    if (kappa < kSmallKappa) {
        double k2 = kappa * kappa;
        return kappa * (1.0 / 3.0 - k2 / 45.0 + 2.0 * k2 * k2 / 945.0 - k2 * k2 * k2 / 4725.0);
    }
    return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}

}  // namespace

ComplexMatrix BlochVector::density_matrix() const {
    ComplexMatrix rho = pauli(0);
    rho += v_.x() * pauli(1) + v_.y() * pauli(2) + v_.z() * pauli(3);
    return rho / 2.0;
}

void require_unit(const BlochVector &v, double tol) {
    if (!v.is_unit(tol)) {
        std::ostringstream msg;
        msg << "(" << v.x() << ", " << v.y() << ", " << v.z() << ") is not a unit vector";
        throw Error(ErrorKind::NotUnitVector, msg.str());
    }
}

Eigen::Matrix3d rotation_from_z(const BlochVector &mu) {
    const double c = mu.z();
    const Eigen::Vector3d k(-mu.y(), mu.x(), 0.0);
    const double s2 = k.squaredNorm();
    if (s2 == 0.0) {
        if (c > 0) return Eigen::Matrix3d::Identity();
        return Eigen::Vector3d(1.0, -1.0, -1.0).asDiagonal();
    }
    Eigen::Matrix3d cross;
    cross << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
    // (1 - c)/s² = 1/(1 + c); pick the form without cancellation.
    const double factor = c >= 0 ? 1.0 / (1.0 + c) : (1.0 - c) / s2;
    return c * Eigen::Matrix3d::Identity() + cross + factor * k * k.transpose();
}

ComplexMatrix spin_rotation_from_z(const BlochVector &mu) {
    using namespace std::complex_literals;
    const double c = mu.z();
    const Eigen::Vector3d k(-mu.y(), mu.x(), 0.0);
    const double s = k.norm();
    if (s == 0.0) {
        if (c > 0) return ComplexMatrix::Identity(2, 2);
        return -1i * pauli(1);
    }
    // R = cos(α/2) I - i sin(α/2) n·σ with n = k/|k|, cos α = c.
    // sin α = s; near c = -1 take cos(α/2) from s to avoid 1 + c.
    double half_cos;
    Eigen::Vector3d n_sin;
    if (c >= 0) {
        half_cos = std::sqrt(0.5 * (1.0 + c));
        n_sin = k / (2.0 * half_cos);
    } else {
        const double half_sin = std::sqrt(0.5 * (1.0 - c));
        half_cos = s / (2.0 * half_sin);
        n_sin = k / s * half_sin;
    }
    ComplexMatrix r = half_cos * pauli(0);
    r += -1i * (n_sin.x() * pauli(1) + n_sin.y() * pauli(2) + n_sin.z() * pauli(3));
    return r;
}

BlochDistribution::BlochDistribution(DistributionKind kind, double parameter, const BlochVector &center)
    : kind_(kind), parameter_(parameter), center_(center) {
    require_unit(center_);
}

BlochDistribution BlochDistribution::uniform(const BlochVector &center) {
    return BlochDistribution(DistributionKind::Uniform, 0.0, center);
}

BlochDistribution BlochDistribution::polar_cap(double theta_max, const BlochVector &center) {
    if (!(theta_max > 0.0 && theta_max <= kPi)) {
        throw Error(ErrorKind::OutOfRange, "polar cap angle must lie in (0, pi], got " + std::to_string(theta_max));
    }
    return BlochDistribution(DistributionKind::PolarCap, theta_max, center);
}

BlochDistribution BlochDistribution::von_mises_fisher(double kappa, const BlochVector &center) {
    if (!(kappa > 0.0 && std::isfinite(kappa))) {
        throw Error(ErrorKind::OutOfRange, "vMF concentration must be finite and > 0, got " + std::to_string(kappa));
    }
    return BlochDistribution(DistributionKind::VonMisesFisher, kappa, center);
}

BlochDistribution BlochDistribution::point(const BlochVector &center) {
    return BlochDistribution(DistributionKind::Point, 0.0, center);
}

BlochDistribution BlochDistribution::of_family(Family family, double parameter, const BlochVector &center) {
    return family == Family::PolarCap ? polar_cap(parameter, center) : von_mises_fisher(parameter, center);
}

BlochVector sample(const BlochDistribution &dist, RngStream &rng) {
    if (dist.kind() == DistributionKind::Point) return dist.center();

    double t = 0.0;
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            t = 1.0 - 2.0 * rng.uniform();
            break;
        case DistributionKind::PolarCap:
            t = 1.0 - rng.uniform() * one_minus_cos(dist.theta_max());
            break;
        case DistributionKind::VonMisesFisher: {
            const double kappa = dist.kappa();
            const double u = rng.uniform_open();
            if (kappa > kLargeKappa) {
                t = 1.0 + std::log1p(-u) / kappa;
            } else {
                t = 1.0 + std::log1p(u * std::expm1(-2.0 * kappa)) / kappa;
            }
            break;
        }
        case DistributionKind::Point:
            break;
    }
    t = std::clamp(t, -1.0, 1.0);
    const double phi = 2.0 * kPi * rng.uniform();
    const double s = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
    Eigen::Vector3d local(s * std::cos(phi), s * std::sin(phi), t);
    const BlochVector &mu = dist.center();
    if (mu.x() == 0.0 && mu.y() == 0.0 && mu.z() > 0.0) return BlochVector(local);
    return BlochVector(rotation_from_z(mu) * local);
}

double log_pdf(const BlochDistribution &dist, const BlochVector &v) {
    require_unit(v, 1e-10);
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            return -std::log(4.0 * kPi);
        case DistributionKind::PolarCap: {
            const double theta = dist.theta_max();
            if (dist.center().dot(v) < std::cos(theta) - kStructureTolerance) {
                return -std::numeric_limits<double>::infinity();
            }
            return -std::log(2.0 * kPi * one_minus_cos(theta));
        }
        case DistributionKind::VonMisesFisher: {
            const double kappa = dist.kappa();
            return kappa * (dist.center().dot(v) - 1.0) + std::log(kappa) - std::log(2.0 * kPi) -
                   std::log(-std::expm1(-2.0 * kappa));
        }
        case DistributionKind::Point:
            break;
    }
    throw Error(ErrorKind::PointHasNoDensity, "a point distribution has no surface density");
}

double mean_axis_moment(const BlochDistribution &dist, int order) {
    if (order != 1 && order != 2) throw Error(ErrorKind::OutOfRange, "moment order must be 1 or 2");
    switch (dist.kind()) {
        case DistributionKind::Uniform:
            return order == 1 ? 0.0 : 1.0 / 3.0;
        case DistributionKind::PolarCap: {
            const double c = std::cos(dist.theta_max());
            return order == 1 ? 0.5 * (1.0 + c) : (1.0 + c + c * c) / 3.0;
        }
        case DistributionKind::VonMisesFisher: {
            const double kappa = dist.kappa();
            if (order == 1) return langevin(kappa);
            if (kappa < kSmallKappa) {
                const double k2 = kappa * kappa;
                return 1.0 / 3.0 + 2.0 * k2 / 45.0 - 4.0 * k2 * k2 / 945.0 + 2.0 * k2 * k2 * k2 / 4725.0;
            }
            return 1.0 - 2.0 * langevin(kappa) / kappa;
        }
        case DistributionKind::Point:
            return 1.0;
    }
    return 0.0;
}

BlochDistribution recenter(const BlochDistribution &dist, const BlochVector &mu) {
    require_unit(mu);
    switch (dist.kind()) {
        case DistributionKind::Uniform: return BlochDistribution::uniform(mu);
        case DistributionKind::PolarCap: return BlochDistribution::polar_cap(dist.theta_max(), mu);
        case DistributionKind::VonMisesFisher: return BlochDistribution::von_mises_fisher(dist.kappa(), mu);
        case DistributionKind::Point: return BlochDistribution::point(mu);
    }
    return dist;
}

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Uniform: return "uniform";
        case DistributionKind::PolarCap: return "polar-cap";
        case DistributionKind::VonMisesFisher: return "vmf";
        case DistributionKind::Point: return "point";
    }
    return "?";
}

std::string to_string(Family family) { return family == Family::PolarCap ? "polar-cap" : "vmf"; }

}  // namespace augfid

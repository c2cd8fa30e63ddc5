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

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "augfid/fidelity.hpp"

namespace augfid {

namespace {

// Real parts of the χ entries that enter the appendix expressions.
template <typename Real>
struct ChiEntries {
    Real c00, c11, c22, c33, c01, c02, c03, c12, c13, c23;

    explicit ChiEntries(const ProcessMatrix &chi)
        : c00(chi(0, 0).real()),
          c11(chi(1, 1).real()),
          c22(chi(2, 2).real()),
          c33(chi(3, 3).real()),
          c01(chi(0, 1).real()),
          c02(chi(0, 2).real()),
          c03(chi(0, 3).real()),
          c12(chi(1, 2).real()),
          c13(chi(1, 3).real()),
          c23(chi(2, 3).real()) {}
};

template <typename Real>
Real vmf_variance_expression(const ChiEntries<Real> &x, Real k) {
    using std::exp;
    const Real &c00 = x.c00, &c11 = x.c11, &c22 = x.c22, &c33 = x.c33;
    const Real &c01 = x.c01, &c02 = x.c02, &c03 = x.c03, &c12 = x.c12, &c13 = x.c13, &c23 = x.c23;
    const Real e = exp(-2 * k);
    const Real om = 1 - e;
    const Real coth = (1 + e) / om;
    const Real csch2 = 4 * e / (om * om);
    const Real k2 = k * k, k3 = k2 * k, k4 = k2 * k2;
    const Real s1122 = c11 + c22;

    Real t = 3 * c00 * c00 * k4 - c11 * c11 * k4 - c22 * c22 * k4 + 3 * c33 * c33 * k4 + 2 * c11 * k4 -
             2 * c11 * c22 * k4 + 2 * c22 * k4 + 2 * c11 * c33 * k4 + 2 * c22 * c33 * k4;
    t += -2 * c33 * k4 - k4 + 8 * c03 * k3 - 8 * c03 * c11 * k3 - 8 * c03 * c22 * k3 + 32 * c02 * c23 * k3 -
         8 * c03 * c33 * k3 + 16 * (k * coth - 1) * c01 * c01 * k2;
    t += -16 * c02 * c02 * k2 + 16 * c03 * c03 * k2 + 4 * c11 * c11 * k2 + 16 * c12 * c12 * k2 -
         80 * c13 * c13 * k2 + 4 * c22 * c22 * k2 - 80 * c23 * c23 * k2;
    {
        const Real g = 2 * k * c03 + c11 + c22 - 2 * c33;
        t += -4 * csch2 * g * g * k2;
    }
    t += 24 * c33 * c33 * k2 + 4 * c11 * k2 - 8 * c11 * c22 * k2 + 4 * c22 * k2 - 12 * c11 * c33 * k2;
    t += -12 * c22 * c33 * k2 - 8 * c33 * k2 +
         2 * c00 *
             (-k2 + (4 * (k * coth - 1) * c03 + (k + 2 * coth) * s1122 + (3 * k - 4 * coth) * c33) * k - 2 * c11 -
              2 * c22 + 4 * c33) *
             k2 +
         32 * c03 * c11 * k + 32 * (k2 - 3 * coth * k + 3) * c01 * c13 * k;
    t += 32 * c03 * c22 * k + 96 * c02 * c23 * k - 64 * c03 * c33 * k;
    {
        Real inner = 4 * c02 * c02 * k2 + c11 * c11 * k2 + 4 * c13 * c13 * k2 + c22 * c22 * k2 + 4 * c23 * c23 * k2 -
                     c11 * k2;
        inner += 2 * c11 * c22 * k2 - c22 * k2 - 24 * c02 * c23 * k +
                 2 * c03 * (-k2 + (k2 - 2) * c11 + (k2 - 2) * c22 + (k2 + 4) * c33) * k - 7 * c11 * c11;
        inner += -7 * c22 * c22 - 2 * (k2 + 8) * c33 * c33 - 2 * c11 * c22 -
                 12 * (c12 * c12 - 4 * (c13 * c13 + c23 * c23)) + (2 * k2 - (k2 - 16) * c11 - (k2 - 16) * c22) * c33;
        t += 4 * coth * inner * k;
    }
    t += 32 * c11 * c11 + 48 * c12 * c12 - 192 * c13 * c13 + 32 * c22 * c22 - 192 * c23 * c23 + 80 * c33 * c33 +
         16 * c11 * c22 - 80 * c11 * c33 - 80 * c22 * c33;
    return t / (4 * k4);
}

template <typename Real>
Real polar_cap_variance_expression(const ChiEntries<Real> &x, Real th) {
    using std::cos;
    using std::sin;
    const Real &c00 = x.c00, &c11 = x.c11, &c22 = x.c22, &c33 = x.c33;
    const Real &c01 = x.c01, &c02 = x.c02, &c03 = x.c03, &c12 = x.c12, &c13 = x.c13, &c23 = x.c23;
    const Real c1 = cos(th), c2 = cos(2 * th), c3 = cos(3 * th), c4 = cos(4 * th), c5 = cos(5 * th);
    const Real s1 = sin(th), sh = sin(th / 2);
    const Real s1122 = c11 + c22;
    const Real quad = 3 * c11 * c11 + 2 * c22 * c11 + 3 * c22 * c22;

    const Real g = -12 * c03 * (c1 + 1) + (s1122 - 2 * c33) * (2 * c1 + c2) - 6 * c00 + 3 * (s1122 - 2);
    const Real first = -40 * g * g;

    Real inner = -1920 * c01 * c13 * s1 * s1 * s1 * s1 + 1920 * c00 * c00 * (c1 - 1) -
                 120 * (2 * c02 * c23 + c03 * (s1122 - 2 * c33)) * c4;
    inner += 3 * (quad + 8 * c33 * c33 + 4 * (c12 * c12 - 4 * (c13 * c13 + c23 * c23)) - 8 * s1122 * c33) * c5;
    inner += 30 *
             (96 * c02 * c02 + 64 * c03 * c03 + 20 * c12 * c12 + 8 * c33 * c33 + 5 * quad +
              16 * (c13 * c13 + c23 * c23) + 8 * s1122 * c33) *
             c1;
    inner += 5 *
             (-64 * c02 * c02 + 128 * c03 * c03 - 20 * c12 * c12 + 24 * c33 * c33 - 5 * quad +
              16 * (c13 * c13 + c23 * c23) + 8 * s1122 * c33) *
             c3;
    inner += 480 * (2 * c02 * c23 + c03 * (s1122 + 2 * c33)) * c2;
    inner += -5120 * c01 * c01 * sh * sh * sh * sh * (c1 + 2) +
             160 * c00 * (-24 * c03 * s1 * s1 + s1122 * (9 * c1 - c3 - 8) + 2 * c33 * (3 * c1 + c3 - 4));
    inner += -384 * c33 * c33 - 8 * (320 * c02 * c02 + 90 * c23 * c02 + 320 * c03 * c03 + 45 * c03 * s1122 +
                                     16 * (quad + 4 * (c12 * c12 + c13 * c13 + c23 * c23)));
    inner += -16 * (75 * c03 + 16 * s1122) * c33;

    return (first - 3 / (c1 - 1) * inner) / 5760;
}

void require_z_frame_single(const ProcessMatrix &chi, const char *what) {
    if (chi.n_qubits() != 1) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs a single-qubit channel");
}

// F(v) = c0 + l·v + vᵀ m v in the frame where the distribution is centered on ẑ.
struct QuadraticFidelity {
    double c0;
    Eigen::Vector3d l;
    Eigen::Matrix3d m;

    // F(v) = ½ (1, v)ᵀ t (1, v)
    explicit QuadraticFidelity(const Eigen::Matrix4d &t) {
        c0 = 0.5 * t(0, 0);
        for (int j = 0; j < 3; ++j) l(j) = 0.5 * (t(0, j + 1) + t(j + 1, 0));
        const Eigen::Matrix3d block = t.block<3, 3>(1, 1);
        m = 0.25 * (block + block.transpose());
    }

    // Azimuthal mean and mean-square fluctuation at s = 1 - cos θ.
    // Writing F = α + β cos φ + γ sin φ + δ cos 2φ + ε sin 2φ:
    // ⟨F⟩ = α, ⟨(F - α)²⟩ = (β² + γ² + δ² + ε²)/2.
    void azimuthal(double s, double &alpha, double &fluct) const {
        const double t = 1.0 - s;
        const double sin2 = s * (2.0 - s);
        const double sn = std::sqrt(std::max(0.0, sin2));
        alpha = c0 + l.z() * t + m(2, 2) * t * t + 0.5 * sin2 * (m(0, 0) + m(1, 1));
        const double beta = sn * (l.x() + 2.0 * m(0, 2) * t);
        const double gamma = sn * (l.y() + 2.0 * m(1, 2) * t);
        const double delta = 0.5 * sin2 * (m(0, 0) - m(1, 1));
        const double eps = sin2 * m(0, 1);
        fluct = 0.5 * (beta * beta + gamma * gamma + delta * delta + eps * eps);
    }
};

template <typename F>
double integrate(F f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    if (b <= a) return 0.0;
    // The tolerance is relative; without an absolute floor a vanishing integrand
    // is refined to full depth.
    double error = 0.0;
    const double coarse = gauss_kronrod<double, 31>::integrate(f, a, b, 0, 1e-11, &error);
    if (error <= 1e-18) return coarse;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 8, 1e-11);
}

// Polar part of a distribution about ẑ: E[g(s)] = ∫ g(x·scale) weight(x) dx over [0, upper].
struct PolarMeasure {
    double upper = 2.0;
    double scale = 1.0;
    double norm = 1.0;
    bool exponential = false;

    explicit PolarMeasure(const BlochDistribution &dist) {
        switch (dist.kind()) {
            case DistributionKind::Uniform:
            case DistributionKind::Point:
                norm = 2.0;
                break;
            case DistributionKind::PolarCap: {
                const double h = std::sin(0.5 * dist.theta_max());
                upper = 2.0 * h * h;
                norm = upper;
                break;
            }
            case DistributionKind::VonMisesFisher:
                // u = κ s, weight e^{-u}
                exponential = true;
                scale = 1.0 / dist.kappa();
                upper = std::min(2.0 * dist.kappa(), 80.0);
                norm = -std::expm1(-2.0 * dist.kappa());
                break;
        }
    }

    template <typename G>
    double expect(G g) const {
        return integrate(
            [&](double x) {
                const double w = exponential ? std::exp(-x) : 1.0;
                return w * g(x * scale);
            },
            0.0, upper) /
               norm;
    }
};

// Mean and variance of ½ (1, v)ᵀ t (1, v) for v drawn from dist taken about ẑ.
std::pair<double, double> zframe_moments(const Eigen::Matrix4d &t, const BlochDistribution &dist) {
    const QuadraticFidelity form(t);
    double alpha, fluct;
    if (dist.kind() == DistributionKind::Point) {
        form.azimuthal(0.0, alpha, fluct);
        return {alpha, 0.0};
    }
    const PolarMeasure measure(dist);
    const double mean = measure.expect([&](double s) {
        form.azimuthal(s, alpha, fluct);
        return alpha;
    });
    const double variance = measure.expect([&](double s) {
        form.azimuthal(s, alpha, fluct);
        return (alpha - mean) * (alpha - mean) + fluct;
    });
    return {mean, variance};
}

Eigen::Matrix4d frame_rotation(const BlochVector &center) {
    Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
    r.block<3, 3>(1, 1) = rotation_from_z(center);
    return r;
}

FidelityStats two_qubit_oracle(const ProcessMatrix &chi, const BlochDistribution &d1, const BlochDistribution &d2) {
    const Eigen::Matrix<double, 16, 16> r = kron(frame_rotation(d1.center()), frame_rotation(d2.center()));
    const Eigen::Matrix<double, 16, 16> t = r.transpose() * transfer_matrix(chi) * r;

    // For fixed v1, F = ½ (1, v2)ᵀ B (1, v2) with B = ½ Σ c1_P c1_Q T[(P, ·), (Q, ·)].
    auto inner = [&](const Eigen::Vector3d &v1) {
        const Eigen::Vector4d c1(1.0, v1.x(), v1.y(), v1.z());
        Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
        for (int p = 0; p < 4; ++p) {
            for (int q = 0; q < 4; ++q) b += 0.5 * c1(p) * c1(q) * t.block<4, 4>(4 * p, 4 * q);
        }
        return zframe_moments(b, d2);
    };
    const double shift = inner(Eigen::Vector3d::UnitZ()).first;

    // The integrand is a trigonometric polynomial of degree at most 4 in φ1,
    // so 16 equally spaced azimuths are exact.
    constexpr int kAzimuths = 16;
    auto ring = [&](double s, double &mean_part, double &square_part) {
        const double t1 = 1.0 - s;
        const double sn = std::sqrt(std::max(0.0, s * (2.0 - s)));
        mean_part = square_part = 0.0;
        for (int k = 0; k < kAzimuths; ++k) {
            const double phi = 2.0 * std::numbers::pi * k / kAzimuths;
            const auto [m, v] = inner({sn * std::cos(phi), sn * std::sin(phi), t1});
            mean_part += m - shift;
            square_part += v + (m - shift) * (m - shift);
        }
        mean_part /= kAzimuths;
        square_part /= kAzimuths;
    };

    double mean_d, square;
    if (d1.kind() == DistributionKind::Point) {
        ring(0.0, mean_d, square);
    } else {
        const PolarMeasure measure(d1);
        double mp, sp;
        mean_d = measure.expect([&](double s) {
            ring(s, mp, sp);
            return mp;
        });
        square = measure.expect([&](double s) {
            ring(s, mp, sp);
            return sp;
        });
    }
    FidelityStats stats;
    stats.provenance = Provenance::Quadrature;
    stats.mean = clamp_mean(shift + mean_d);
    stats.variance = clamp_variance(square - mean_d * mean_d);
    return stats;
}

}  // namespace

double variance_vmf(const ProcessMatrix &chi, double kappa) {
    require_z_frame_single(chi, "variance_vmf");
    if (!(kappa > 0.0 && std::isfinite(kappa))) throw Error(ErrorKind::OutOfRange, "kappa must be finite and > 0");
    // The expression cancels heavily for both small and large κ.
    using Wide = boost::multiprecision::cpp_bin_float_100;
    const double value = static_cast<double>(vmf_variance_expression(ChiEntries<Wide>(chi), Wide(kappa)));
    return clamp_variance(value);
}

double variance_polar_cap_closed_form(const ProcessMatrix &chi, double theta_max) {
    require_z_frame_single(chi, "variance_polar_cap_closed_form");
    if (!(theta_max > 0.0 && theta_max <= std::numbers::pi)) {
        throw Error(ErrorKind::OutOfRange, "polar cap angle must lie in (0, pi]");
    }
    return static_cast<double>(
        polar_cap_variance_expression(ChiEntries<long double>(chi), static_cast<long double>(theta_max)));
}

PolarCapVariance variance_polar_cap(const ProcessMatrix &chi, double theta_max) {
    PolarCapVariance out;
    out.closed_form = variance_polar_cap_closed_form(chi, theta_max);
    out.value = theta_max < 1e-3 ? 0.0
                                 : variance_quadrature_oracle(chi, BlochDistribution::polar_cap(theta_max)).variance;
    out.closed_form_residual = out.closed_form - out.value;
    return out;
}

FidelityStats variance_quadrature_oracle(const ProcessMatrix &chi, const BlochDistribution &dist) {
    require_z_frame_single(chi, "variance_quadrature_oracle");
    const Eigen::Matrix4d r = frame_rotation(dist.center());
    const Eigen::Matrix4d t = r.transpose() * transfer_matrix(chi) * r;
    const auto [mean, variance] = zframe_moments(t, dist);
    FidelityStats stats;
    stats.provenance = Provenance::Quadrature;
    stats.mean = clamp_mean(mean);
    stats.variance = clamp_variance(variance);
    return stats;
}

FidelityStats quadrature_oracle(const ProcessMatrix &chi, std::span<const BlochDistribution> dists) {
    if (static_cast<int>(dists.size()) != chi.n_qubits()) {
        throw Error(ErrorKind::DimensionMismatch, "need one distribution per qubit");
    }
    if (chi.n_qubits() == 1) return variance_quadrature_oracle(chi, dists[0]);
    return two_qubit_oracle(chi, dists[0], dists[1]);
}

}  // namespace augfid

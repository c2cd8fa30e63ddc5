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

// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "augfid/montecarlo.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace augfid;

namespace {

constexpr double kPi = std::numbers::pi;

/// Collects failures for one criterion.
class Check {
   public:
    void expect(bool ok, const std::string &what) {
        if (!ok && failures_.size() < 5) failures_.push_back(what);
        failed_ += !ok;
    }
    void near(double got, double want, double tol, const std::string &what) {
        std::ostringstream s;
        s.precision(17);
        s << what << ": got " << got << ", want " << want << " +- " << tol;
        expect(std::abs(got - want) <= tol, s.str());
    }
    bool ok() const { return failed_ == 0; }
    std::string detail() const {
        std::string d;
        for (const auto &f : failures_) d += "\n    " + f;
        if (failed_ > failures_.size()) d += "\n    (" + std::to_string(failed_ - failures_.size()) + " more)";
        return d;
    }

   private:
    std::vector<std::string> failures_;
    std::size_t failed_ = 0;
};

ProcessMatrix ext(Extremum s) { return embed_restricted(extremal_restricted(0.985, s)); }

const std::vector<BlochVector> kAxes{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};

void ac1(Check &c) {
    c.near(uniform_avg(embed_pauli(pc1())), 0.99, 1e-12, "pc1 uniform");
    c.near(uniform_avg(embed_pauli(depolarizing(0.985))), 0.99, 1e-12, "depolarizing uniform");
    c.near(uniform_avg(ext(Extremum::Min)), 0.99, 1e-12, "min-extremal uniform");
    for (const auto &chi : two_qubit_ensemble(0.985, 50, 1)) c.near(uniform_avg(chi), 0.988, 1e-12, "two-qubit uniform");
}

void ac2(Check &c) {
    std::mt19937_64 gen(2);
    double worst = 0.0, worst_model = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const ProcessMatrix chi = embed_restricted(testing::random_restricted(0.5 + 0.5 * std::uniform_real_distribution<>()(gen), gen));
        const double u = uniform_avg(chi);
        c.near(polar_cap_avg(chi, kPi), u, 1e-12, "cap at pi");
        const double dv = vmf_avg(chi, 1e-6) - u;
        c.near(dv, 0.0, 1e-8, "vmf at 1e-6 minus uniform");
        worst = std::max(worst, std::abs(dv));
        worst_model = std::max(worst_model, std::abs(dv - 2.0 / 3.0 * 1e-6 * chi(0, 3).real()));
        for (const auto &axis : kAxes) {
            const double f = single_state_fidelity(chi, axis);
            c.near(polar_cap_avg(chi, 1e-6, axis), f, 1e-6, "cap at 1e-6");
            c.near(vmf_avg(chi, 1e7, axis), f, 1e-6, "vmf at 1e7");
        }
    }
    std::printf("    max |vmf(1e-6) - uniform| = %.3g; after removing (2/3) kappa chi03: %.3g\n", worst, worst_model);
}

void ac3(Check &c) {
    const std::vector<double> point{1e-6};
    const EnvelopeResult p = envelope_curve(0.985, Family::PolarCap, point);
    const double min_point = std::pow(2.0 * std::sqrt(0.985) - 1.0, 2);
    c.near(p.max_curve[0], 1.0, 1e-9, "point max");
    c.near(p.min_curve[0], min_point, 1e-9, "point min");
    c.near(p.pauli_min_curve[0], 0.985, 1e-12, "pauli point min");
    c.near(p.pauli_max_curve[0], 1.0, 1e-12, "pauli point max");
    const EnvelopeResult q = envelope_curve(0.985, Family::VonMisesFisher, std::vector<double>{1e10});
    c.near(q.max_curve[0], 1.0, 1e-9, "vmf point max");
    c.near(q.min_curve[0], min_point, 1e-9, "vmf point min");
    for (Family f : {Family::PolarCap, Family::VonMisesFisher}) {
        const auto grid = default_grid(f);
        c.expect(grid.size() == 50, "grid size");
        const EnvelopeResult r = envelope_curve(0.985, f, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            constexpr double slack = 1e-12;
            c.expect(r.min_curve[i] <= r.pauli_min_curve[i] + slack && r.pauli_min_curve[i] <= r.pauli_max_curve[i] + slack &&
                         r.pauli_max_curve[i] <= r.max_curve[i] + slack,
                     "nesting at " + std::to_string(grid[i]));
        }
    }
}

void ac4(Check &c) {
    const ProcessMatrix chi = embed_pauli(depolarizing(0.985));
    for (double t : default_grid(Family::PolarCap)) c.near(polar_cap_avg(chi, t), 0.99, 1e-12, "cap flat");
    for (double k : default_grid(Family::VonMisesFisher)) c.near(vmf_avg(chi, k), 0.99, 1e-12, "vmf flat");
}

void ac5(Check &c) {
    std::mt19937_64 gen(5);
    const std::vector<ProcessMatrix> channels{ext(Extremum::Min), embed_pauli(pc2()), testing::random_cptp(1, 4, gen)};
    const std::vector<double> thetas{0.2, 0.8, kPi / 2, 2.4, kPi};
    const std::vector<double> kappas{0.1, 1.0, 5.0, 20.0, 100.0};
    const BlochVector center(0.0, 0.6, -0.8);
    std::uint64_t run = 0;
    for (std::size_t ci = 0; ci < channels.size(); ++ci) {
        for (Family f : {Family::PolarCap, Family::VonMisesFisher}) {
            for (double p : f == Family::PolarCap ? thetas : kappas) {
                const BlochDistribution d = BlochDistribution::of_family(f, p, ci == 2 ? center : BlochVector(0, 0, 1));
                const double analytic = augmented_avg(channels[ci], d);
                const FidelityStats quad = variance_quadrature_oracle(channels[ci], d);
                const BlochDistribution one[] = {d};
                const FidelityStats mc = mc_fidelity(channels[ci], one, 1000000, RngStream(5, run++));
                const std::string tag = "channel " + std::to_string(ci) + " param " + std::to_string(p);
                c.near(quad.mean, analytic, 1e-8 * std::abs(analytic), tag + " analytic/quadrature");
                c.near(mc.mean, analytic, 5.0 * mc.std_error, tag + " mc/analytic");
                c.near(mc.mean, quad.mean, 5.0 * mc.std_error, tag + " mc/quadrature");
                c.near(mc.variance, quad.variance, 5.0 * mc.variance_std_error, tag + " mc/quadrature variance");
            }
        }
    }
}

void ac6(Check &c) {
    for (const ProcessMatrix &chi : {ProcessMatrix::identity(1), embed_pauli(depolarizing(0.985))}) {
        for (double k : default_grid(Family::VonMisesFisher)) {
            c.near(variance_vmf(chi, k), 0.0, 1e-12, "vmf closed form zero");
            c.near(variance_quadrature_oracle(chi, BlochDistribution::von_mises_fisher(k)).variance, 0.0, 1e-12, "vmf oracle zero");
        }
        for (double t : default_grid(Family::PolarCap)) {
            c.near(variance_polar_cap(chi, t).value, 0.0, 1e-12, "cap variance zero");
            c.near(variance_quadrature_oracle(chi, BlochDistribution::polar_cap(t)).variance, 0.0, 1e-12, "cap oracle zero");
        }
    }
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<> kappa(0.1, 50.0);
    for (int k = 0; k < 100; ++k) {
        const ProcessMatrix chi = testing::random_cptp(1, 1 + k % 4, gen);
        const double kp = kappa(gen);
        const double oracle = variance_quadrature_oracle(chi, BlochDistribution::von_mises_fisher(kp)).variance;
        c.near(variance_vmf(chi, kp), oracle, 1e-8 * std::abs(oracle), "vmf variance vs oracle");
    }
    const PolarCapVariance id = variance_polar_cap(ProcessMatrix::identity(1), 1.0);
    c.expect(id.closed_form_residual != 0.0 && std::abs(id.closed_form_residual) > 1e-6, "identity closed-form defect detected");
    c.near(id.value, 0.0, 1e-12, "identity reported variance");
    const std::vector<double> grid{0.5, kPi / 2, 2.5};
    const EnvelopeResult env = envelope_curve(0.985, Family::PolarCap, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = variance_quadrature_oracle(ext(Extremum::Min), BlochDistribution::polar_cap(grid[i])).variance;
        c.near(env.min_err[i], std::sqrt(v), 1e-12, "error bar from oracle");
    }
}

void ac7(Check &c) {
    for (const PauliChannel &p : {pc1(), pc2()}) c.near(noise_bias(p, Axis::Z).eta, 1.0 / 14.0, 1e-15, "eta_z");
    const NamedPauliChannel ch[] = {{"pc1", pc1()}, {"pc2", pc2()}};
    const BlochVector z[] = {BlochVector(0, 0, 1)};
    const BlochVector x[] = {BlochVector(1, 0, 0)};
    for (Family f : {Family::PolarCap, Family::VonMisesFisher}) {
        const auto grid = default_grid(f);
        const std::size_t n = grid.size();
        const auto rz = bias_curves(ch, z, f, grid);
        for (std::size_t i = 0; i < n; ++i) c.near(rz[i].fidelity, rz[n + i].fidelity, 1e-15, "z-center degeneracy");
        const auto rx = bias_curves(ch, x, f, grid);
        if (f == Family::PolarCap) {
            const auto w = polar_cap_weights(kPi / 2);
            std::printf("    +x gap is 0.008 (b - a); cap weights at pi/2: a = %.17g, b = %.17g\n", w.a, w.b);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_range = f == Family::PolarCap ? grid[i] < 2.0 : grid[i] > 1.0;
            if (in_range) c.expect(rx[i].fidelity - rx[n + i].fidelity > 1e-4, "x-center separation at " + std::to_string(grid[i]));
        }
    }
    const auto p = bias_curves(ch, x, Family::PolarCap, std::vector<double>{1e-7});
    c.near(p[0].fidelity, 0.997, 1e-12, "pc1 +x point");
    c.near(p[1].fidelity, 0.995, 1e-12, "pc2 +x point");
    c.near(p[0].fidelity - p[1].fidelity, 2e-3, 1e-12, "+x point gap");
}

void ac8(Check &c) {
    const std::vector<ProcessMatrix> ens = two_qubit_ensemble(0.985, 100, 8);
    c.expect(ens.size() >= 20, "ensemble has 20 members");
    const BlochDistribution d[] = {BlochDistribution::uniform(), BlochDistribution::uniform()};
    int positive = 0, negative = 0;
    for (std::size_t k = 0; k < std::min<std::size_t>(20, ens.size()); ++k) {
        const double local = two_qubit_uniform_local(ens[k]);
        const FidelityStats mc = mc_fidelity(ens[k], d, 1000000, RngStream(8, k));
        c.near(mc.mean, local, 5.0 * mc.std_error, "local-uniform mc");
        double weight = 0.0;
        for (int j = 1; j < 4; ++j) weight += ens[k](j, j).real() + ens[k](4 * j, 4 * j).real();
        const double full = uniform_avg(ens[k]);
        c.near(full, 0.988, 1e-12, "full uniform");
        const double predicted = (10.0 * weight - 4.0 * (1.0 - 0.985)) / 45.0;
        c.near(local - full, predicted, 1e-12, "local minus full");
        c.expect(weight == 0.0 || local != full, "local differs from full");
        positive += predicted > 0;
        negative += predicted < 0;
    }
    c.expect(positive + negative == 20, "nonzero differences");
}

void ac9(Check &c) {
    RngStream rng(9, derive_stream_id({0x656e73656d626c65}));
    std::size_t accepted = 0;
    for (int k = 0; k < 6000; ++k) {
        const auto a = random_two_qubit_chi(0.985, rng);
        if (!a) continue;
        ++accepted;
        c.expect(min_eigenvalue_hermitian(a->chi.chi()) >= -1e-10, "accepted chi is PSD");
        c.near(a->chi.chi().trace().real(), 1.0, 1e-10, "unit diagonal sum");
    }
    std::printf("    accepted %zu of 6000\n", accepted);
    c.expect(accepted >= 900 && accepted <= 2700, "accepted count in [900, 2700]: " + std::to_string(accepted));
    const std::vector<double> uniform{kPi};
    const HeatmapGrid h = two_qubit_heatmap(0.985, 6000, Family::PolarCap, uniform, uniform, 9);
    std::printf("    heatmap uniform cell min %.6f max %.6f over %zu channels\n", h.min_at(0, 0), h.max_at(0, 0), h.ensemble_size);
    c.expect(h.min_at(0, 0) < 0.99, "uniform-limit cell min below 0.99");
    const std::vector<double> kappa{1e-6};
    const HeatmapGrid hk = two_qubit_heatmap(0.985, 6000, Family::VonMisesFisher, kappa, kappa, 9);
    c.expect(hk.min_at(0, 0) < 0.99, "vmf uniform-limit cell min below 0.99");
}

void ac10(Check &c) {
    std::vector<BlochDistribution> dists;
    for (double t : {0.1, kPi / 2, kPi}) dists.push_back(BlochDistribution::polar_cap(t, BlochVector(0.0, 1.0, 0.0)));
    for (double k : {0.1, 10.0, 100.0}) dists.push_back(BlochDistribution::von_mises_fisher(k, BlochVector(1.0, 0.0, 0.0)));
    std::uint64_t stream = 0;
    for (const auto &d : dists) {
        RngStream rng(10, stream++);
        std::vector<double> t(100000);
        for (double &x : t) x = sample(d, rng).vec().dot(d.center().vec());
        const double p = testing::ks_p_value(testing::ks_statistic(t, [&](double x) { return testing::axis_cdf(d, x); }), t.size());
        std::printf("    KS %s %.4g: p = %.3f\n", to_string(d.kind()).c_str(), d.parameter(), p);
        c.expect(p > 0.01, "KS p-value for " + to_string(d.kind()) + " " + std::to_string(d.parameter()));
    }
    RngStream rng(10, 99);
    const BlochDistribution vmf = BlochDistribution::von_mises_fisher(10.0);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (int k = 0; k < 1000000; ++k) sum += sample(vmf, rng).vec();
    c.near(sum.norm() / 1e6, 0.9, 1e-3, "vmf(10) mean resultant");
}

void ac11(Check &c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "augfid_acceptance";
    fs::create_directories(dir);
    const std::vector<std::vector<std::string>> commands{
        {"validate", "pc1"},
        {"fidelity", "ext-min:0.985", "--dist", "vmf", "--kappa", "10", "--mc", "300000"},
        {"fidelity", "pc1", "--dist", "polar-cap", "--theta", "1.2", "--center", "+x"},
        {"variance", "pc2", "--dist", "polar-cap", "--theta", "2", "--mc", "200000"},
        {"envelope", "--chi00", "0.985", "--family", "polar-cap"},
        {"bias", "--channels", "pc1,pc2", "--centers", "+x,+z", "--family", "vmf"},
        {"heatmap", "--proposals", "600", "--grid1", "0.3,1.5,3.14159", "--grid2", "0.3,3.14159", "--n-mc", "4000"},
        {"sample", "--dist", "vmf", "--kappa", "10", "--n", "150000"},
    };
    int k = 0;
    for (const auto &cmd : commands) {
        for (const char *format : {"csv", "json"}) {
            std::string first;
            for (const char *workers : {"1", "3", "8"}) {
                const std::string out = (dir / ("out" + std::to_string(k++))).string();
                std::vector<std::string> args{"--seed", "42", "--workers", workers, "--format", format, "--out", out};
                args.insert(args.end(), cmd.begin(), cmd.end());
                std::ostringstream so, se;
                const int status = cli::run_cli(args, so, se);
                c.expect(status == 0, cmd[0] + " exit status " + std::to_string(status) + ": " + se.str());
                std::ifstream in(out, std::ios::binary);
                const std::string text{std::istreambuf_iterator<char>(in), {}};
                c.expect(!text.empty(), cmd[0] + " produced output");
                if (first.empty()) first = text;
                c.expect(text == first, cmd[0] + " " + format + " differs at workers=" + workers);
            }
        }
    }
    fs::remove_all(dir);
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<void(Check &)>>> criteria{
        {"AC1 uniform baseline", ac1},
        {"AC2 limit recovery", ac2},
        {"AC3 envelope endpoints", ac3},
        {"AC4 depolarizing flatness", ac4},
        {"AC5 oracle triangle", ac5},
        {"AC6 variance sanity", ac6},
        {"AC7 noise-bias discrimination", ac7},
        {"AC8 two-qubit local-uniform", ac8},
        {"AC9 two-qubit ensemble", ac9},
        {"AC10 sampler correctness", ac10},
        {"AC11 reproducibility", ac11},
    };
    int failed = 0;
    for (const auto &[name, run] : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(c);
        } catch (const std::exception &e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s (%.1fs)%s\n", c.ok() ? "PASS" : "FAIL", name, secs, c.detail().c_str());
        std::fflush(stdout);
        failed += !c.ok();
    }
    return failed == 0 ? 0 : 1;
}

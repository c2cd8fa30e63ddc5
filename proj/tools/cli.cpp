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

#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "augfid/channel_io.hpp"
#include "augfid/montecarlo.hpp"
#include "augfid/parallel.hpp"
#include "manifest.hpp"

namespace augfid::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr std::uint64_t kFidelityStream = 0x666964656c697479ULL;
constexpr std::uint64_t kVarianceStream = 0x76617269616e6365ULL;
constexpr std::uint64_t kSampleStream = 0x73616d706c65ULL;
constexpr std::size_t kSampleChunk = 4096;

// Bad input that the option parser cannot see; exit status 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;
    std::string format;
};

struct DistArgs {
    std::string kind = "uniform";
    std::optional<double> theta;
    std::optional<double> kappa;
    std::string center = "+z";
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    return parts;
}

double parse_real(const std::string &s) {
    double x = 0.0;
    const char *first = s.data();
    const char *last = first + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last) throw UsageError("not a number: '" + s + "'");
    return x;
}

std::vector<double> parse_grid(const std::string &s) {
    std::vector<double> grid;
    for (const auto &p : split(s, ',')) grid.push_back(parse_real(p));
    if (grid.empty()) throw UsageError("empty grid");
    return grid;
}

std::optional<BlochVector> axis_center(const std::string &s) {
    static const std::pair<const char *, BlochVector> axes[] = {
        {"+x", {1, 0, 0}}, {"-x", {-1, 0, 0}}, {"x", {1, 0, 0}}, {"+y", {0, 1, 0}}, {"-y", {0, -1, 0}},
        {"y", {0, 1, 0}},  {"+z", {0, 0, 1}},  {"-z", {0, 0, -1}}, {"z", {0, 0, 1}},
    };
    for (const auto &[name, v] : axes) {
        if (s == name) return v;
    }
    return std::nullopt;
}

BlochVector parse_center(const std::string &s) {
    if (auto axis = axis_center(s)) return *axis;
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw UsageError("center must be +x|-x|+y|-y|+z|-z or x,y,z: '" + s + "'");
    Eigen::Vector3d v(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
    if (!(v.norm() > 0.0) || !v.allFinite()) throw UsageError("center must be a nonzero finite vector");
    return BlochVector(v.normalized());
}

std::vector<BlochVector> parse_centers(const std::vector<std::string> &values) {
    std::vector<BlochVector> out;
    for (const auto &value : values) {
        const auto parts = split(value, ',');
        bool all_axes = !parts.empty();
        for (const auto &p : parts) all_axes = all_axes && axis_center(p).has_value();
        if (all_axes) {
            for (const auto &p : parts) out.push_back(*axis_center(p));
        } else {
            out.push_back(parse_center(value));
        }
    }
    return out;
}

std::string center_label(const BlochVector &v) {
    static const char *names[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
        for (double sign : {1.0, -1.0}) {
            Eigen::Vector3d e = Eigen::Vector3d::Zero();
            e(k) = sign;
            if (v.vec() == e) return std::string(sign > 0 ? "+" : "-") + names[k];
        }
    }
    return format_real(v.x()) + " " + format_real(v.y()) + " " + format_real(v.z());
}

BlochDistribution make_dist(const DistArgs &d) {
    const BlochVector center = parse_center(d.center);
    if (d.kind == "uniform") return BlochDistribution::uniform(center);
    if (d.kind == "point") return BlochDistribution::point(center);
    if (d.kind == "polar-cap") {
        if (!d.theta) throw UsageError("polar-cap needs --theta");
        return BlochDistribution::polar_cap(*d.theta, center);
    }
    if (d.kind == "vmf") {
        if (!d.kappa) throw UsageError("vmf needs --kappa");
        return BlochDistribution::von_mises_fisher(*d.kappa, center);
    }
    throw UsageError("unknown distribution '" + d.kind + "'");
}

std::string describe(const BlochDistribution &d) {
    std::string s;
    switch (d.kind()) {
        case DistributionKind::Uniform: s = "uniform"; break;
        case DistributionKind::Point: s = "point"; break;
        case DistributionKind::PolarCap: s = "polar-cap(theta=" + format_real(d.theta_max()) + ")"; break;
        case DistributionKind::VonMisesFisher: s = "vmf(kappa=" + format_real(d.kappa()) + ")"; break;
    }
    return s + " about " + center_label(d.center());
}

Family parse_family(const std::string &s) { return s == "vmf" ? Family::VonMisesFisher : Family::PolarCap; }

struct LoadedChannel {
    ProcessMatrix chi;
    std::optional<std::pair<std::string, std::string>> digest;
};

LoadedChannel load_channel(const std::string &source, bool checked = true) {
    if (source == "pc1") return {embed_pauli(pc1()), std::nullopt};
    if (source == "pc2") return {embed_pauli(pc2()), std::nullopt};
    if (source == "identity") return {ProcessMatrix::identity(1), std::nullopt};
    const auto colon = source.find(':');
    if (colon != std::string::npos) {
        const std::string name = source.substr(0, colon);
        const std::string arg = source.substr(colon + 1);
        if (name == "depol") return {embed_pauli(depolarizing(parse_real(arg))), std::nullopt};
        if (name == "ext-min") return {embed_restricted(extremal_restricted(parse_real(arg), Extremum::Min)), std::nullopt};
        if (name == "ext-max") return {embed_restricted(extremal_restricted(parse_real(arg), Extremum::Max)), std::nullopt};
    }
    std::ifstream in(source, std::ios::binary);
    if (!in) throw UsageError("cannot read channel file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    ProcessMatrix chi = checked ? parse_channel_json(text) : parse_channel_json_unchecked(text);
    return {std::move(chi), std::make_pair(source, sha256_hex(text))};
}

PauliChannel as_pauli(const ProcessMatrix &chi, const std::string &id) {
    if (chi.n_qubits() != 1) throw Error(ErrorKind::DimensionMismatch, "'" + id + "' is not a single-qubit channel");
    PauliChannel pc;
    for (int k = 0; k < 4; ++k) {
        for (int l = 0; l < 4; ++l) {
            if (k != l && std::abs(chi(k, l)) > kStructureTolerance) {
                throw Error(ErrorKind::OutOfRange, "'" + id + "' is not a Pauli channel");
            }
        }
        pc.p[static_cast<std::size_t>(k)] = chi(k, k).real();
    }
    return pc;
}

std::string csv_field(const ojson &v) {
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

class Emitter {
   public:
    Emitter(const Globals &g, RunManifest manifest, std::ostream &out) : g_(g), manifest_(std::move(manifest)), out_(out) {}

    RunManifest &manifest() { return manifest_; }

    void object(const ojson &obj) {
        std::ostringstream s;
        if (g_.format == "csv") {
            s << manifest_csv_header(manifest_);
            std::string header, row;
            for (auto it = obj.begin(); it != obj.end(); ++it) {
                header += (header.empty() ? "" : ",") + it.key();
                row += (it == obj.begin() ? "" : ",") + csv_field(it.value());
            }
            s << header << '\n' << row << '\n';
        } else {
            ojson doc = obj;
            doc["manifest"] = manifest_json(manifest_);
            s << doc.dump(2) << '\n';
        }
        write(s.str());
    }

    void table(const std::vector<std::string> &columns, const std::vector<ojson> &rows) {
        std::string text;
        if (g_.format == "json") {
            ojson doc;
            doc["columns"] = columns;
            doc["rows"] = rows;
            doc["manifest"] = manifest_json(manifest_);
            text = doc.dump(2) + "\n";
        } else {
            text = manifest_csv_header(manifest_);
            for (std::size_t c = 0; c < columns.size(); ++c) text += (c ? "," : "") + columns[c];
            text += '\n';
            for (const auto &row : rows) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (c) text += ',';
                    text += csv_field(row[c]);
                }
                text += '\n';
            }
        }
        write(text);
    }

   private:
    void write(const std::string &text) {
        if (g_.out.empty() || g_.out == "-") {
            out_ << text;
            return;
        }
        std::ofstream f(g_.out, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write '" + g_.out + "'");
        f << text;
    }

    const Globals &g_;
    RunManifest manifest_;
    std::ostream &out_;
};

ojson stats_json(const FidelityStats &s) {
    ojson j;
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["std_error"] = s.std_error;
    j["provenance"] = to_string(s.provenance);
    return j;
}

// χ re-expressed in the frame where `center` is ẑ.
ProcessMatrix z_frame(const ProcessMatrix &chi, const BlochVector &center) {
    if (center.vec() == Eigen::Vector3d::UnitZ()) return chi;
    return conjugate_rotation(chi, spin_rotation_from_z(center));
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Augmented gate fidelities of noisy qubit channels", "augfid"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--workers", g.workers, "Worker threads; never changes the output")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto add_dist = [](CLI::App *sub, DistArgs &d, const std::string &suffix) {
        sub->add_option("--dist" + suffix, d.kind, "uniform | polar-cap | vmf | point")
            ->check(CLI::IsMember({"uniform", "polar-cap", "vmf", "point"}));
        sub->add_option("--theta" + suffix, d.theta, "Cap angle in radians");
        sub->add_option("--kappa" + suffix, d.kappa, "von Mises-Fisher concentration");
        sub->add_option("--center" + suffix, d.center, "+x|-x|+y|-y|+z|-z or x,y,z");
    };
    const auto family_check = CLI::IsMember({"polar-cap", "vmf"});

    // validate
    std::string v_channel;
    double v_tol = kDefaultTolerance;
    CLI::App *validate_cmd = app.add_subcommand("validate", "Check a channel for complete positivity and trace preservation");
    validate_cmd->add_option("channel", v_channel, "Channel file or alias")->required();
    validate_cmd->add_option("--tol", v_tol, "Tolerance")->capture_default_str();

    // fidelity
    std::string f_channel;
    DistArgs f_d1, f_d2;
    std::size_t f_mc = 0;
    bool f_quad = false, f_analytic = false;
    CLI::App *fidelity_cmd = app.add_subcommand("fidelity", "Augmented fidelity under a state distribution");
    fidelity_cmd->add_option("channel", f_channel, "Channel file or alias")->required();
    add_dist(fidelity_cmd, f_d1, "");
    add_dist(fidelity_cmd, f_d2, "2");
    auto *f_mc_opt = fidelity_cmd->add_option("--mc", f_mc, "Monte-Carlo with N samples");
    auto *f_quad_opt = fidelity_cmd->add_flag("--quadrature", f_quad, "Numerical quadrature");
    auto *f_an_opt = fidelity_cmd->add_flag("--analytic", f_analytic, "Closed form (default)");
    f_mc_opt->excludes(f_quad_opt)->excludes(f_an_opt);
    f_quad_opt->excludes(f_an_opt);

    // variance
    std::string va_channel;
    DistArgs va_d;
    std::size_t va_mc = 0;
    CLI::App *variance_cmd = app.add_subcommand("variance", "Fidelity variance: closed form against quadrature");
    variance_cmd->add_option("channel", va_channel, "Channel file or alias")->required();
    add_dist(variance_cmd, va_d, "");
    variance_cmd->add_option("--mc", va_mc, "Also estimate by Monte-Carlo with N samples");

    // envelope
    double e_chi00 = 0.0;
    std::string e_family = "polar-cap", e_grid, e_center = "+z";
    CLI::App *envelope_cmd = app.add_subcommand("envelope", "Extremal fidelity curves at fixed chi00");
    envelope_cmd->add_option("--chi00", e_chi00, "Identity weight")->required();
    envelope_cmd->add_option("--family", e_family, "polar-cap | vmf")->check(family_check)->capture_default_str();
    envelope_cmd->add_option("--grid", e_grid, "Comma-separated parameter values");
    envelope_cmd->add_option("--center", e_center, "Distribution center")->capture_default_str();

    // bias
    std::vector<std::string> b_channels{"pc1,pc2"}, b_centers{"+z,+x,+y"};
    std::string b_family = "polar-cap", b_grid;
    CLI::App *bias_cmd = app.add_subcommand("bias", "Fidelity curves of Pauli channels at several centers");
    bias_cmd->add_option("--channels", b_channels, "Pauli channels (aliases or files)")->capture_default_str();
    bias_cmd->add_option("--centers", b_centers, "Distribution centers")->capture_default_str();
    bias_cmd->add_option("--family", b_family, "polar-cap | vmf")->check(family_check)->capture_default_str();
    bias_cmd->add_option("--grid", b_grid, "Comma-separated parameter values");

    // heatmap
    double h_chi = 0.985;
    std::size_t h_proposals = 6000, h_nmc = 10000;
    std::string h_family = "polar-cap", h_grid1, h_grid2;
    bool h_moments = false, h_real = false, h_project = false;
    CLI::App *heatmap_cmd = app.add_subcommand("heatmap", "Two-qubit ensemble min/max fidelity surfaces");
    heatmap_cmd->add_option("--chi0000", h_chi, "Identity weight")->capture_default_str();
    heatmap_cmd->add_option("--proposals", h_proposals, "Random process-matrix proposals")->capture_default_str();
    heatmap_cmd->add_option("--family", h_family, "polar-cap | vmf")->check(family_check)->capture_default_str();
    heatmap_cmd->add_option("--grid1", h_grid1, "Qubit-1 parameter values");
    heatmap_cmd->add_option("--grid2", h_grid2, "Qubit-2 parameter values");
    heatmap_cmd->add_option("--n-mc", h_nmc, "Samples per cell")->capture_default_str();
    heatmap_cmd->add_flag("--moments", h_moments, "Exact product-state moments instead of sampling");
    heatmap_cmd->add_flag("--real-offdiag", h_real, "Real off-diagonal entries in the ensemble");
    heatmap_cmd->add_flag("--project-tp", h_project, "Project ensemble members onto trace preservation");

    // sample
    DistArgs s_d;
    std::size_t s_n = 0;
    CLI::App *sample_cmd = app.add_subcommand("sample", "Draw states from a distribution");
    add_dist(sample_cmd, s_d, "");
    sample_cmd->add_option("--n", s_n, "Number of samples")->required()->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    RunManifest manifest;
    manifest.command_line = canonical_command_line(args);
    manifest.seed = g.seed;
    manifest.rng_algorithm = std::string(RngStream::kAlgorithm);
    manifest.tool_version = tool_version();
    manifest.timestamp = manifest_timestamp();

    auto run = [&]() -> int {
        if (*validate_cmd) {
            if (g.format.empty()) g.format = "json";
            LoadedChannel ch = load_channel(v_channel, false);
            if (ch.digest) manifest.input_digests.push_back(*ch.digest);
            const ValidationReport r = validate(ch.chi, v_tol);
            ojson j;
            j["n_qubits"] = ch.chi.n_qubits();
            j["hermiticity_defect"] = r.hermiticity_defect;
            j["diag_sum_defect"] = r.diag_sum_defect;
            j["min_eigenvalue"] = r.min_eigenvalue;
            j["tp_defect"] = r.tp_defect;
            j["is_cp"] = r.is_cp;
            j["is_tp"] = r.is_tp;
            Emitter(g, manifest, out).object(j);
            return r.is_cp && r.is_tp ? 0 : 1;
        }

        if (*fidelity_cmd) {
            if (g.format.empty()) g.format = "json";
            LoadedChannel ch = load_channel(f_channel);
            if (ch.digest) manifest.input_digests.push_back(*ch.digest);
            std::vector<BlochDistribution> dists{make_dist(f_d1)};
            if (ch.chi.n_qubits() == 2) {
                DistArgs d2 = f_d1;
                if (fidelity_cmd->count("--dist2")) d2.kind = f_d2.kind;
                if (f_d2.theta) d2.theta = f_d2.theta;
                if (f_d2.kappa) d2.kappa = f_d2.kappa;
                if (fidelity_cmd->count("--center2")) d2.center = f_d2.center;
                dists.push_back(make_dist(d2));
            }
            ojson j;
            j["n_qubits"] = ch.chi.n_qubits();
            std::string desc;
            for (const auto &d : dists) desc += (desc.empty() ? "" : " x ") + describe(d);
            j["distribution"] = desc;

            if (f_mc > 0) {
                const RngStream rng(g.seed, derive_stream_id({kFidelityStream}));
                const FidelityStats s = mc_fidelity(ch.chi, dists, f_mc, rng, g.workers);
                j.update(stats_json(s));
                j["variance_std_error"] = s.variance_std_error;
                j["n_samples"] = f_mc;
            } else if (f_quad) {
                j.update(stats_json(quadrature_oracle(ch.chi, dists)));
            } else if (ch.chi.n_qubits() == 1) {
                const BlochDistribution &d = dists[0];
                FidelityStats s;
                s.mean = clamp_mean(augmented_avg(ch.chi, d));
                std::string variance_source = "quadrature";
                if (d.kind() == DistributionKind::VonMisesFisher) {
                    s.variance = variance_vmf(z_frame(ch.chi, d.center()), d.kappa());
                    variance_source = "closed_form";
                } else if (d.kind() == DistributionKind::Point) {
                    variance_source = "exact";
                } else {
                    s.variance = variance_quadrature_oracle(ch.chi, d).variance;
                }
                j.update(stats_json(s));
                j["variance_provenance"] = variance_source;
            } else {
                if (dists[0].kind() != DistributionKind::Uniform || dists[1].kind() != DistributionKind::Uniform) {
                    throw Error(ErrorKind::OutOfRange,
                                "no closed form for two-qubit non-uniform distributions; use --mc N or --quadrature");
                }
                FidelityStats s;
                s.mean = clamp_mean(two_qubit_uniform_local(ch.chi));
                s.variance = quadrature_oracle(ch.chi, dists).variance;
                j.update(stats_json(s));
                j["variance_provenance"] = "quadrature";
            }
            Emitter(g, manifest, out).object(j);
            return 0;
        }

        if (*variance_cmd) {
            if (g.format.empty()) g.format = "json";
            LoadedChannel ch = load_channel(va_channel);
            if (ch.digest) manifest.input_digests.push_back(*ch.digest);
            if (ch.chi.n_qubits() != 1) throw Error(ErrorKind::DimensionMismatch, "variance takes a single-qubit channel");
            const BlochDistribution d = make_dist(va_d);
            const FidelityStats q = variance_quadrature_oracle(ch.chi, d);
            ojson j;
            j["distribution"] = describe(d);
            j["mean"] = q.mean;
            j["variance"] = q.variance;
            j["provenance"] = to_string(q.provenance);
            std::optional<double> closed;
            const ProcessMatrix chi_z = z_frame(ch.chi, d.center());
            if (d.kind() == DistributionKind::VonMisesFisher) closed = variance_vmf(chi_z, d.kappa());
            if (d.kind() == DistributionKind::PolarCap) closed = variance_polar_cap_closed_form(chi_z, d.theta_max());
            if (closed) {
                const double residual = *closed - q.variance;
                const bool ok = std::abs(residual) <= std::max(1e-12, 1e-8 * std::abs(q.variance));
                j["closed_form_variance"] = *closed;
                j["closed_form_residual"] = residual;
                j["closed_form_status"] = ok ? "consistent" : "inconsistent";
            } else {
                j["closed_form_variance"] = nullptr;
                j["closed_form_residual"] = nullptr;
                j["closed_form_status"] = "none";
            }
            if (va_mc > 0) {
                const RngStream rng(g.seed, derive_stream_id({kVarianceStream}));
                const BlochDistribution one[] = {d};
                const FidelityStats m = mc_fidelity(ch.chi, one, va_mc, rng, g.workers);
                j["mc_mean"] = m.mean;
                j["mc_std_error"] = m.std_error;
                j["mc_variance"] = m.variance;
                j["mc_variance_std_error"] = m.variance_std_error;
                j["n_samples"] = va_mc;
            }
            Emitter(g, manifest, out).object(j);
            return 0;
        }

        if (*envelope_cmd) {
            if (g.format.empty()) g.format = "csv";
            const Family family = parse_family(e_family);
            const std::vector<double> grid = e_grid.empty() ? default_grid(family) : parse_grid(e_grid);
            const EnvelopeResult r = envelope_curve(e_chi00, family, grid, parse_center(e_center));
            std::vector<ojson> rows;
            for (std::size_t i = 0; i < r.grid.size(); ++i) {
                rows.push_back(ojson::array({r.grid[i], r.min_curve[i], r.min_err[i], r.max_curve[i], r.max_err[i],
                                             r.pauli_min_curve[i], r.pauli_max_curve[i], r.depolarizing_level}));
            }
            manifest.notes.emplace_back("family", to_string(family));
            Emitter(g, manifest, out)
                .table({"param", "min", "min_err", "max", "max_err", "pauli_min", "pauli_max", "depol"}, rows);
            return 0;
        }

        if (*bias_cmd) {
            if (g.format.empty()) g.format = "csv";
            const Family family = parse_family(b_family);
            const std::vector<double> grid = b_grid.empty() ? default_grid(family) : parse_grid(b_grid);
            std::vector<NamedPauliChannel> channels;
            for (const auto &value : b_channels) {
                for (const auto &id : split(value, ',')) {
                    LoadedChannel ch = load_channel(id);
                    if (ch.digest) manifest.input_digests.push_back(*ch.digest);
                    channels.push_back({id, as_pauli(ch.chi, id)});
                }
            }
            const std::vector<BlochVector> centers = parse_centers(b_centers);
            std::vector<ojson> rows;
            for (const auto &row : bias_curves(channels, centers, family, grid)) {
                rows.push_back(ojson::array({row.param, row.channel_id, center_label(row.center), row.fidelity}));
            }
            manifest.notes.emplace_back("family", to_string(family));
            Emitter(g, manifest, out).table({"param", "channel_id", "center", "fidelity"}, rows);
            return 0;
        }

        if (*heatmap_cmd) {
            if (g.format.empty()) g.format = "csv";
            const Family family = parse_family(h_family);
            const std::vector<double> grid1 = h_grid1.empty() ? default_grid(family) : parse_grid(h_grid1);
            const std::vector<double> grid2 = h_grid2.empty() ? grid1 : parse_grid(h_grid2);
            HeatmapOptions options;
            options.n_mc = h_nmc;
            options.workers = g.workers;
            options.method = h_moments ? HeatmapMethod::Moments : HeatmapMethod::MonteCarlo;
            options.ensemble.off_diagonal = h_real ? OffDiagonal::Real : OffDiagonal::Complex;
            options.ensemble.project_tp = h_project;
            const HeatmapGrid h = two_qubit_heatmap(h_chi, h_proposals, family, grid1, grid2, g.seed, options);
            std::vector<ojson> rows;
            for (std::size_t i = 0; i < h.axis1.size(); ++i) {
                for (std::size_t j = 0; j < h.axis2.size(); ++j) {
                    rows.push_back(ojson::array({h.axis1[i], h.axis2[j], h.min_at(i, j), h.max_at(i, j)}));
                }
            }
            manifest.notes.emplace_back("family", to_string(family));
            manifest.notes.emplace_back("proposals", std::to_string(h.n_proposals));
            manifest.notes.emplace_back("ensemble_size", std::to_string(h.ensemble_size));
            manifest.notes.emplace_back("method", h_moments ? "moments" : "monte_carlo");
            manifest.notes.emplace_back("off_diagonal", h_real ? "real" : "complex");
            manifest.notes.emplace_back("project_tp", h_project ? "true" : "false");
            if (!h_moments) manifest.notes.emplace_back("samples_per_cell", std::to_string(h_nmc));
            Emitter(g, manifest, out).table({"p1", "p2", "min", "max"}, rows);
            return 0;
        }

        if (*sample_cmd) {
            if (g.format.empty()) g.format = "csv";
            const BlochDistribution d = make_dist(s_d);
            const RngStream base(g.seed, derive_stream_id({kSampleStream}));
            std::vector<BlochVector> states(s_n);
            const std::size_t n_chunks = (s_n + kSampleChunk - 1) / kSampleChunk;
            parallel_for(n_chunks, g.workers, [&](std::size_t k) {
                RngStream rng = base.split(k);
                const std::size_t end = std::min(s_n, (k + 1) * kSampleChunk);
                for (std::size_t i = k * kSampleChunk; i < end; ++i) states[i] = sample(d, rng);
            });
            std::vector<ojson> rows;
            rows.reserve(s_n);
            for (const auto &v : states) {
                rows.push_back(ojson::array({v.x(), v.y(), v.z(), 0.5 * (1.0 + d.center().dot(v))}));
            }
            manifest.notes.emplace_back("distribution", describe(d));
            Emitter(g, manifest, out).table({"x", "y", "z", "fidelity_vs_center"}, rows);
            return 0;
        }
        return 2;
    };

    try {
        return run();
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Parse ? 2 : 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace augfid::cli

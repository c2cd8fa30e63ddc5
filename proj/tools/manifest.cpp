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

#include "manifest.hpp"

#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace augfid::cli {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return out.str();
}

std::string canonical_command_line(const std::vector<std::string> &args) {
    std::string out = "augfid";
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string &a = args[i];
        if (a == "--workers" || a == "--out") {
            ++i;
            continue;
        }
        if (a.starts_with("--workers=") || a.starts_with("--out=")) continue;
        out += ' ';
        out += a;
    }
    return out;
}

std::string manifest_timestamp() {
    const char *epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (epoch == nullptr || *epoch == '\0') return "unrecorded";
    char *end = nullptr;
    const long long secs = std::strtoll(epoch, &end, 10);
    if (*end != '\0') return "unrecorded";
    const std::time_t t = static_cast<std::time_t>(secs);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string tool_version() { return AUGFID_VERSION; }

std::string manifest_csv_header(const RunManifest &m) {
    std::ostringstream out;
    out << "# command: " << m.command_line << '\n';
    out << "# seed: " << m.seed << '\n';
    out << "# rng_algorithm: " << m.rng_algorithm << '\n';
    out << "# tool_version: " << m.tool_version << '\n';
    out << "# timestamp: " << m.timestamp << '\n';
    for (const auto &[path, digest] : m.input_digests) out << "# input_sha256: " << digest << "  " << path << '\n';
    for (const auto &[key, value] : m.notes) out << "# " << key << ": " << value << '\n';
    return out.str();
}

nlohmann::ordered_json manifest_json(const RunManifest &m) {
    nlohmann::ordered_json j;
    j["command"] = m.command_line;
    j["seed"] = m.seed;
    j["rng_algorithm"] = m.rng_algorithm;
    j["tool_version"] = m.tool_version;
    j["timestamp"] = m.timestamp;
    auto digests = nlohmann::ordered_json::array();
    for (const auto &[path, digest] : m.input_digests) digests.push_back({{"path", path}, {"sha256", digest}});
    j["input_digests"] = digests;
    for (const auto &[key, value] : m.notes) j[key] = value;
    return j;
}

}  // namespace augfid::cli

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

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace augfid::cli {

struct RunManifest {
    std::string command_line;
    std::uint64_t seed = 0;
    std::string rng_algorithm;
    std::string tool_version;
    std::string timestamp;
    /// (path, sha256 hex) for every input file read.
    std::vector<std::pair<std::string, std::string>> input_digests;
    /// Extra key/value lines specific to a command.
    std::vector<std::pair<std::string, std::string>> notes;
};

std::string sha256_hex(std::string_view data);

/// Command line with --workers and --out removed, so it does not depend on either.
std::string canonical_command_line(const std::vector<std::string> &args);

/// UTC time from SOURCE_DATE_EPOCH, or "unrecorded".
std::string manifest_timestamp();

std::string tool_version();

/// `# key: value` lines.
std::string manifest_csv_header(const RunManifest &m);

nlohmann::ordered_json manifest_json(const RunManifest &m);

}  // namespace augfid::cli

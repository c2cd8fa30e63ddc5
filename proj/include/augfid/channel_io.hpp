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
#include <string_view>

#include "augfid/channels.hpp"

namespace augfid {

/// Parses a channel document in one of three forms:
///   {"n_qubits": 1|2, "chi": [[{"re": f, "im": f}, ...], ...]}
///   {"restricted": {"chi00": f, "chi11": f, "chi22": f, "chi33": f, "chi03": f}}
///   {"pauli": [p0, p1, p2, p3]}
/// Malformed JSON or schema violations raise ErrorKind::Parse; well-formed
/// documents describing an invalid channel raise the channel's own error kind.
/// Parses any of the three channel forms. Restricted and Pauli shorthands are
/// checked for CPTP; the full form only for structure.
ProcessMatrix parse_channel_json(std::string_view text);

/// Same, but shorthands are embedded without the CPTP check so that
/// validate() can report on them.
ProcessMatrix parse_channel_json_unchecked(std::string_view text);

/// Full-matrix form with 17 significant digits per component.
std::string channel_to_json(const ProcessMatrix &chi);

}  // namespace augfid

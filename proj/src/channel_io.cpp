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

#include "augfid/channel_io.hpp"

#include <json.hpp>

namespace augfid {

using nlohmann::json;

namespace {

double number_at(const json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        throw Error(ErrorKind::Parse, std::string("expected numeric field '") + key + "'");
    }
    return it->get<double>();
}

ProcessMatrix parse_full(const json &doc) {
    const auto &nq = doc.at("n_qubits");
    if (!nq.is_number_integer()) throw Error(ErrorKind::Parse, "'n_qubits' must be an integer");
    const int n_qubits = nq.get<int>();
    if (n_qubits != 1 && n_qubits != 2) {
        throw Error(ErrorKind::Parse, "'n_qubits' must be 1 or 2");
    }
    const int dim = 1 << (2 * n_qubits);
    const auto &rows = doc.at("chi");
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
        throw Error(ErrorKind::Parse, "'chi' must have " + std::to_string(dim) + " rows");
    }
    ComplexMatrix chi(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
        }
        for (int j = 0; j < dim; ++j) {
            const auto &e = row[static_cast<std::size_t>(j)];
            if (!e.is_object()) throw Error(ErrorKind::Parse, "chi entries must be {\"re\":..,\"im\":..} objects");
            chi(i, j) = Complex(number_at(e, "re"), number_at(e, "im"));
        }
    }
    return ProcessMatrix(n_qubits, std::move(chi));
}

ProcessMatrix embed_unchecked(const RestrictedChi &rc) {
    using namespace std::complex_literals;
    ComplexMatrix chi = ComplexMatrix::Zero(4, 4);
    chi(0, 0) = rc.chi00;
    chi(1, 1) = rc.chi11;
    chi(2, 2) = rc.chi22;
    chi(3, 3) = rc.chi33;
    chi(0, 3) = chi(3, 0) = rc.chi03;
    chi(1, 2) = -1i * rc.chi03;
    chi(2, 1) = 1i * rc.chi03;
    return ProcessMatrix(1, std::move(chi));
}

ProcessMatrix embed_unchecked(const PauliChannel &pc) {
    ComplexMatrix chi = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) chi(k, k) = pc.p[static_cast<std::size_t>(k)];
    return ProcessMatrix(1, std::move(chi));
}

ProcessMatrix parse(std::string_view text, bool checked) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Parse, "channel document must be a JSON object");
    try {
        if (doc.contains("restricted")) {
            const auto &r = doc["restricted"];
            if (!r.is_object()) throw Error(ErrorKind::Parse, "'restricted' must be an object");
            const RestrictedChi rc{number_at(r, "chi00"), number_at(r, "chi11"), number_at(r, "chi22"),
                                   number_at(r, "chi33"), number_at(r, "chi03")};
            return checked ? embed_restricted(rc) : embed_unchecked(rc);
        }
        if (doc.contains("pauli")) {
            const auto &p = doc["pauli"];
            if (!p.is_array() || p.size() != 4) throw Error(ErrorKind::Parse, "'pauli' must list 4 probabilities");
            PauliChannel pc;
            for (std::size_t k = 0; k < 4; ++k) {
                if (!p[k].is_number()) throw Error(ErrorKind::Parse, "'pauli' entries must be numbers");
                pc.p[k] = p[k].get<double>();
            }
            return checked ? embed_pauli(pc) : embed_unchecked(pc);
        }
        if (doc.contains("chi")) return parse_full(doc);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::Parse, e.what());
    }
    throw Error(ErrorKind::Parse, "expected one of 'chi', 'restricted' or 'pauli'");
}

}  // namespace

ProcessMatrix parse_channel_json(std::string_view text) { return parse(text, true); }

ProcessMatrix parse_channel_json_unchecked(std::string_view text) { return parse(text, false); }

std::string channel_to_json(const ProcessMatrix &chi) {
    json rows = json::array();
    for (int i = 0; i < chi.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < chi.dim(); ++j) row.push_back({{"re", chi(i, j).real()}, {"im", chi(i, j).imag()}});
        rows.push_back(std::move(row));
    }
    json doc{{"n_qubits", chi.n_qubits()}, {"chi", std::move(rows)}};
    return doc.dump();
}

}  // namespace augfid

// JSON channel schema shared by the CLI and the bindings.
//
// Kraus form:  {"dim": d, "kraus": [matrix, ...], "ideal_unitary": matrix?}
// Chi form:    {"dim": d, "chi": matrix, "basis": "gellmann"}
// where matrix = [[[re, im], ...] per row].

#pragma once

#include <optional>

#include <json.hpp>

#include "fidmom/channels.hpp"

namespace fidmom {

nlohmann::json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const nlohmann::json& j);

struct ChannelSpec {
    KrausChannel channel;          // the implementation E as loaded
    std::optional<Matrix> ideal;   // optional ideal unitary (default identity)
};

// Throws std::invalid_argument on schema violations
ChannelSpec channel_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const KrausChannel& C);

// U^dag o E when an ideal unitary is present, otherwise E itself
KrausChannel lambda_of(const ChannelSpec& spec);

}  // namespace fidmom

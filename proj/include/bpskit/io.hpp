#pragma once

#include <string>

#include "json.hpp"

#include "bpskit/half_laurent.hpp"
#include "bpskit/mutation.hpp"
#include "bpskit/presets.hpp"
#include "bpskit/qtorus.hpp"

namespace bpskit {

using Json = nlohmann::ordered_json;

/// Reads the quiver file format:
///   {"vertices": [...], "arrows": [{"name","from","to"}],
///    "potential": [{"coeff": "<rational>", "cycle": [arrow names]}],
///    "stability": {"<vertex>": "<rational>"}, "cut": [arrow names]}
/// Cycles list arrows left to right, rightmost applied first. "potential",
/// "stability" and "cut" are optional. Throws InvalidInput on malformed data.
QuiverWithPotential qp_from_json(const Json& j, const std::string& name = "input");
QuiverWithPotential load_qp_file(const std::string& path);

/// Writes the same format back.
Json to_json(const QuiverWithPotential& qp);
Json to_json(const Quiver& q, const Potential& w);

/// {"terms": {"h:<n>": "<rational>"}, "known_through": n | null, "pretty": "..."}
/// where h:n is the coefficient of q^{n/2}.
Json to_json(const HalfLaurent& f);
HalfLaurent laurent_from_json(const Json& j);

/// {"(1,1,0)": <laurent>, ...}
Json to_json(const BPSTable& table);
Json to_json(const TorusElement& z);
Json to_json(const QPState& s);

}  // namespace bpskit

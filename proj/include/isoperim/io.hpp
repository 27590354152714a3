#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoperim/arcs.hpp"
#include "isoperim/geometry.hpp"
#include "isoperim/perturbation.hpp"
#include "isoperim/profile.hpp"

namespace isoperim::io {

using nlohmann::json;

// Accepted forms:
//   {"preset": "disk", "radius": r}
//   {"preset": "ellipse", "a": a, "b": b}
//   {"preset": "ellipse", "params": {"a": a, "b": b}}
//   {"support_cos": [a0, a1, ...], "support_sin": [0, b1, ...]}
// with an optional "area" that rescales the curve to that area.
SupportCurve parse_domain(const json& spec);
// Same, from JSON text.
SupportCurve parse_domain_text(const std::string& text);

// %.17g, so a value read back is bit-identical.
std::string format_double(double v);

void write_profile_csv(std::ostream& os, const ProfileTable& table);
void write_implicit_csv(std::ostream& os, const ImplicitCurve& curve);

json to_json(const DomainClassReport& r);
json to_json(const ConjectureReport& r);
json to_json(const PerfectArc& a);
json to_json(const OracleResult& r);
json to_json(const std::vector<ModeRoot>& roots);
json to_json(const ExperimentReport& r);

}  // namespace isoperim::io

#include "isoperim/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "isoperim/errors.hpp"

namespace isoperim::io {

namespace {

double number(const json& spec, const char* key, double fallback) {
  if (!spec.contains(key)) return fallback;
  const json& v = spec.at(key);
  if (!v.is_number()) throw Error(ErrorKind::InvalidSpec, std::string(key) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidSpec, std::string(key) + " must be finite");
  return x;
}

std::vector<double> numbers(const json& spec, const char* key) {
  if (!spec.contains(key)) return {};
  const json& v = spec.at(key);
  if (!v.is_array()) throw Error(ErrorKind::InvalidSpec, std::string(key) + " must be an array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw Error(ErrorKind::InvalidSpec, std::string(key) + " holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

SupportCurve parse_domain(const json& spec) {
  if (!spec.is_object()) throw Error(ErrorKind::InvalidSpec, "domain spec must be a JSON object");
  SupportCurve curve = [&] {
    if (spec.contains("preset")) {
      if (!spec.at("preset").is_string()) throw Error(ErrorKind::InvalidSpec, "preset must be a string");
      const std::string name = spec.at("preset").get<std::string>();
      // preset parameters may sit at the top level or under "params"
      const json& p = spec.contains("params") ? spec.at("params") : spec;
      if (!p.is_object()) throw Error(ErrorKind::InvalidSpec, "params must be an object");
      if (name == "disk") {
        const double r = number(p, "radius", 1.0);
        if (!(r > 0.0)) throw Error(ErrorKind::InvalidSpec, "radius must be positive");
        return SupportCurve::disk(r);
      }
      if (name == "ellipse") {
        const double a = number(p, "a", std::sqrt(2.0));
        const double b = number(p, "b", 1.0 / std::sqrt(2.0));
        if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::InvalidSpec, "semi-axes must be positive");
        return SupportCurve::ellipse(a, b);
      }
      throw Error(ErrorKind::InvalidSpec, "unknown preset '" + name + "'");
    }
    if (spec.contains("support_cos")) {
      std::vector<double> c = numbers(spec, "support_cos");
      std::vector<double> s = numbers(spec, "support_sin");
      if (c.empty()) throw Error(ErrorKind::InvalidSpec, "support_cos needs at least a0");
      return SupportCurve(std::move(c), std::move(s));
    }
    throw Error(ErrorKind::InvalidSpec, "domain spec needs 'preset' or 'support_cos'");
  }();
  if (spec.contains("area")) {
    const double target = number(spec, "area", 0.0);
    if (!(target > 0.0)) throw Error(ErrorKind::InvalidSpec, "area must be positive");
    curve = normalize_area(curve, target);
  }
  return curve;
}

SupportCurve parse_domain_text(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("malformed domain JSON: ") + e.what());
  }
  return parse_domain(spec);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_profile_csv(std::ostream& os, const ProfileTable& table) {
  os << "theta,area,length,curvature\n";
  for (const auto& s : table.samples) {
    os << format_double(s.theta) << ',' << format_double(s.area) << ','
       << format_double(s.length) << ',' << format_double(s.curvature) << '\n';
  }
}

void write_implicit_csv(std::ostream& os, const ImplicitCurve& curve) {
  os << "x,y,polyline\n";
  for (std::size_t k = 0; k < curve.polylines.size(); ++k) {
    for (const Vec2& p : curve.polylines[k]) {
      os << format_double(p.x) << ',' << format_double(p.y) << ',' << k << '\n';
    }
  }
}

json to_json(const DomainClassReport& r) {
  return {{"area", r.area},
          {"perimeter", r.perimeter},
          {"kappa_max", r.kappa_max},
          {"kappa_min", r.kappa_min},
          {"theta_kappa_max", r.theta_kappa_max},
          {"is_class_A", r.is_class_A},
          {"is_disk", r.is_disk},
          {"symmetric_both_axes", r.symmetric_both_axes},
          {"has_degenerate_vertex", r.has_degenerate_vertex},
          {"vertex_thetas", r.vertex_thetas},
          {"pestov_ionin_holds", r.pestov_ionin_holds}};
}

json to_json(const ConjectureReport& r) {
  return {{"sup_ratio", r.sup_ratio},
          {"argmax_area", r.argmax_area},
          {"passed", r.passed},
          {"margin", r.margin},
          {"interior_max", r.interior_max},
          {"stationarity_residual", r.stationarity_residual},
          {"area_floor", r.area_floor},
          {"kappa_max", r.kappa_max}};
}

json to_json(const PerfectArc& a) {
  json j = {{"kind", a.kind == ArcKind::Circular ? "circular" : "segment"},
            {"curvature", a.curvature},
            {"endpoint_thetas", {a.endpoint_thetas.first, a.endpoint_thetas.second}},
            {"start", {a.start.x, a.start.y}},
            {"end", {a.end.x, a.end.y}},
            {"length", a.length},
            {"enclosed_area", a.enclosed_area},
            {"contained", a.contained},
            {"orthogonality_residual", a.orthogonality_residual}};
  if (a.kind == ArcKind::Circular) {
    j["center"] = {a.center.x, a.center.y};
    j["radius"] = a.radius;
  }
  return j;
}

json to_json(const OracleResult& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"t1", c.t1}, {"t2", c.t2}, {"length", c.length}, {"curvature", c.curvature}});
  }
  return {{"area", r.area},
          {"length", r.length},
          {"minimizer_count", r.minimizer_count},
          {"kink", r.kink},
          {"candidates", cands}};
}

json to_json(const std::vector<ModeRoot>& roots) {
  json out = json::array();
  for (const auto& m : roots) {
    out.push_back({{"n", m.n}, {"b", m.b}, {"theta", m.theta}, {"area", m.area}});
  }
  return out;
}

json to_json(const ExperimentReport& r) {
  return {{"area", r.area},
          {"s_values", r.s_values},
          {"profile_values", r.profile_values},
          {"profile_at_zero", r.profile_at_zero},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"fit_degree", r.fit_degree},
          {"fit_resolved", r.fit_resolved},
          {"noise_floor", r.noise_floor},
          {"oracle_tolerances", r.oracle_tolerances},
          {"alpha_quadratic", r.alpha_quadratic},
          {"beta_quadratic", r.beta_quadratic},
          {"predicted_alpha", r.predicted_alpha},
          {"verdict", to_string(r.verdict)}};
}

}  // namespace isoperim::io

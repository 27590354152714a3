// Command-line front end: every computation writes JSON or CSV to stdout or --output.
//
// Exit codes: 0 success, 1 conjecture check ran but did not pass, 2 bad configuration,
// 3 domain precondition violated, 4 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "isoperim/disk.hpp"
#include "isoperim/errors.hpp"
#include "isoperim/io.hpp"
#include "isoperim/perturbation.hpp"
#include "isoperim/profile.hpp"

namespace {

using namespace isoperim;
using io::json;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidSpec:
      return kExitConfig;
    case ErrorKind::NonConvex:
    case ErrorKind::OutOfRange:
    case ErrorKind::NotAVertex:
    case ErrorKind::DegenerateVertex:
    case ErrorKind::NotClassA:
    case ErrorKind::NotNormalized:
    case ErrorKind::IsDisk:
    case ErrorKind::NonConvexPerturbation:
      return kExitDomain;
    default:
      return kExitNumeric;
  }
}

// Flag values win over the config file, which wins over defaults.
struct Settings {
  json config = json::object();

  template <class T>
  T pick(const CLI::Option* opt, const std::optional<T>& flag, const char* key, T fallback) const {
    if (opt->count() > 0 && flag) return *flag;
    if (config.contains(key)) {
      try {
        return config.at(key).get<T>();
      } catch (const json::exception&) {
        throw Error(ErrorKind::InvalidSpec, std::string("config key '") + key + "' has the wrong type");
      }
    }
    return fallback;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidSpec, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct DomainFlags {
  std::optional<std::string> preset;
  std::optional<double> a, b;
  std::optional<std::string> domain;
  CLI::Option* preset_opt = nullptr;
  CLI::Option* a_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  CLI::Option* domain_opt = nullptr;

  void attach(CLI::App* app) {
    preset_opt = app->add_option("--preset", preset, "Built-in domain: disk or ellipse");
    a_opt = app->add_option("--a", a, "Ellipse semi-axis along x");
    b_opt = app->add_option("--b", b, "Ellipse semi-axis along y");
    domain_opt = app->add_option("--domain", domain, "Domain spec as inline JSON or a JSON file");
  }

  SupportCurve resolve(const Settings& s) const {
    json spec;
    if (domain_opt->count() > 0) {
      const std::string& text = *domain;
      const auto first = text.find_first_not_of(" \t\r\n");
      return io::parse_domain_text(first != std::string::npos && text[first] == '{' ? text : slurp(text));
    }
    if (preset_opt->count() == 0 && s.config.contains("domain")) return io::parse_domain(s.config.at("domain"));
    spec["preset"] = s.pick<std::string>(preset_opt, preset, "preset", "disk");
    if (spec["preset"] == "ellipse") {
      spec["a"] = s.pick<double>(a_opt, a, "a", std::sqrt(2.0));
      spec["b"] = s.pick<double>(b_opt, b, "b", 1.0 / std::sqrt(2.0));
    }
    return io::parse_domain(spec);
  }
};

void require_grid(std::size_t n, const char* what) {
  if (n < 16) throw Error(ErrorKind::InvalidSpec, std::string(what) + " must be at least 16");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::InvalidSpec, std::string(what) + " must be positive");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error(ErrorKind::InvalidSpec, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void put(const json& j) { stream() << j.dump(2) << '\n'; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isoperimetric profiles of planar convex domains"};
  app.require_subcommand(1);
  // global options may also follow the subcommand; subcommands inherit this
  app.fallthrough();

  std::optional<unsigned> threads_flag;
  std::optional<std::string> output_flag;
  std::string config_path;
  auto* threads_opt = app.add_option("--threads", threads_flag, "Worker threads (default ISOPERIM_THREADS or 1)");
  auto* output_opt = app.add_option("-o,--output", output_flag, "Write the result here instead of stdout");
  app.add_option("--config", config_path, "JSON file with default option values");

  DomainFlags info_dom, prof_dom, conj_dom, arcs_dom;

  auto* info = app.add_subcommand("domain-info", "Area, perimeter, curvature extremes and class-A verdict");
  info_dom.attach(info);

  auto* prof = app.add_subcommand("profile", "Symmetric-family profile table as CSV");
  prof_dom.attach(prof);
  std::optional<std::size_t> prof_samples;
  auto* prof_samples_opt = prof->add_option("--samples", prof_samples, "Number of theta samples");

  auto* conj = app.add_subcommand("check-conjecture", "Compare the profile with the disk's");
  conj_dom.attach(conj);
  std::optional<std::size_t> conj_samples;
  auto* conj_samples_opt = conj->add_option("--samples", conj_samples, "Number of theta samples");

  auto* arcs = app.add_subcommand("arcs-find", "Shortest perfect arc enclosing a given area");
  arcs_dom.attach(arcs);
  std::optional<double> arcs_area;
  std::optional<std::size_t> arcs_grid;
  auto* arcs_area_opt = arcs->add_option("--area", arcs_area, "Target area");
  auto* arcs_grid_opt = arcs->add_option("--grid", arcs_grid, "Oracle grid size");

  auto* pert = app.add_subcommand("perturb", "Fourier-mode perturbations of the disk");
  pert->require_subcommand(1);
  auto* roots = pert->add_subcommand("roots", "Contact half-angles where mode n has l = 0");
  std::optional<int> roots_n;
  auto* roots_n_opt = roots->add_option("--n", roots_n, "Mode index (>= 2)");
  auto* exper = pert->add_subcommand("experiment", "Profile change of the disk under f = cos(n u)");
  std::optional<int> exp_mode;
  std::optional<double> exp_smax, exp_area;
  std::optional<std::size_t> exp_points, exp_grid;
  auto* exp_mode_opt = exper->add_option("--mode", exp_mode, "Mode index n of f = cos(n u)");
  auto* exp_smax_opt = exper->add_option("--s-max", exp_smax, "Largest perturbation size");
  auto* exp_points_opt = exper->add_option("--points", exp_points, "Number of s values");
  auto* exp_area_opt = exper->add_option("--area", exp_area, "Target area (default: first mode root)");
  auto* exp_grid_opt = exper->add_option("--grid", exp_grid, "Oracle grid size");

  auto* implicit = app.add_subcommand("implicit-curve", "Zero set of cos y sin(xy) - x sin y cos(xy)");
  std::optional<double> xmin, xmax, ymin, ymax, slice_x, slice_y;
  std::optional<std::size_t> resolution;
  auto* xmin_opt = implicit->add_option("--xmin", xmin);
  auto* xmax_opt = implicit->add_option("--xmax", xmax);
  auto* ymin_opt = implicit->add_option("--ymin", ymin);
  auto* ymax_opt = implicit->add_option("--ymax", ymax);
  auto* res_opt = implicit->add_option("--resolution", resolution, "Cells per axis");
  auto* slice_x_opt = implicit->add_option("--slice-x", slice_x, "Report y-roots on the line x = value");
  auto* slice_y_opt = implicit->add_option("--slice-y", slice_y, "Report x-roots on the line y = value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    Settings st;
    if (!config_path.empty()) {
      try {
        st.config = json::parse(slurp(config_path));
      } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidSpec, std::string("malformed config: ") + e.what());
      }
      if (!st.config.is_object()) throw Error(ErrorKind::InvalidSpec, "config must be a JSON object");
    }
    const unsigned threads = st.pick<unsigned>(threads_opt, threads_flag, "threads", threads_from_env());
    if (threads == 0) throw Error(ErrorKind::InvalidSpec, "threads must be positive");
    Output out(st.pick<std::string>(output_opt, output_flag, "output", ""));

    if (info->parsed()) {
      out.put(io::to_json(classify(info_dom.resolve(st))));
      return 0;
    }
    if (prof->parsed()) {
      const auto n = st.pick<std::size_t>(prof_samples_opt, prof_samples, "samples", 256);
      require_grid(n, "samples");
      io::write_profile_csv(out.stream(), symmetric_profile(prof_dom.resolve(st), n, threads));
      return 0;
    }
    if (conj->parsed()) {
      const auto n = st.pick<std::size_t>(conj_samples_opt, conj_samples, "samples", 512);
      require_grid(n, "samples");
      const ConjectureReport rep = conjecture_check(conj_dom.resolve(st), n, threads);
      out.put(io::to_json(rep));
      return rep.passed ? 0 : kExitFail;
    }
    if (arcs->parsed()) {
      const SupportCurve dom = arcs_dom.resolve(st);
      const double area = st.pick<double>(arcs_area_opt, arcs_area, "area", 0.5 * dom.area());
      const auto grid = st.pick<std::size_t>(arcs_grid_opt, arcs_grid, "grid", 128);
      require_grid(grid, "grid");
      require_positive(area, "area");
      out.put(io::to_json(ProfileOracle(dom, grid, threads).query(area)));
      return 0;
    }
    if (roots->parsed()) {
      out.put(io::to_json(find_mode_roots(st.pick<int>(roots_n_opt, roots_n, "n", 4))));
      return 0;
    }
    if (exper->parsed()) {
      const int mode = st.pick<int>(exp_mode_opt, exp_mode, "mode", 4);
      const double smax = st.pick<double>(exp_smax_opt, exp_smax, "s_max", 5e-3);
      const auto points = st.pick<std::size_t>(exp_points_opt, exp_points, "points", 5);
      const auto grid = st.pick<std::size_t>(exp_grid_opt, exp_grid, "grid", 128);
      require_positive(smax, "s-max");
      require_grid(grid, "grid");
      if (mode < 1) throw Error(ErrorKind::InvalidSpec, "mode must be at least 1");
      double area = 0.5 * kPi - 1.0;  // disk arc with b = pi/4
      if (mode >= 2) {
        const auto r = find_mode_roots(mode);
        if (!r.empty()) area = r.front().area;
      }
      area = st.pick<double>(exp_area_opt, exp_area, "area", area);
      std::vector<double> s_grid;
      for (std::size_t i = 1; i <= points; ++i) {
        s_grid.push_back(smax * static_cast<double>(i) / static_cast<double>(points));
      }
      ExperimentOptions opt;
      opt.oracle_grid = grid;
      opt.threads = threads;
      out.put(io::to_json(profile_decrease_experiment(PerturbationField::cos_mode(mode), area, s_grid, opt)));
      return 0;
    }
    if (implicit->parsed()) {
      const std::pair<double, double> xr{st.pick<double>(xmin_opt, xmin, "xmin", 0.0),
                                         st.pick<double>(xmax_opt, xmax, "xmax", 8.0)};
      const std::pair<double, double> yr{st.pick<double>(ymin_opt, ymin, "ymin", 0.0),
                                         st.pick<double>(ymax_opt, ymax, "ymax", 1.57)};
      if (slice_x_opt->count() > 0) {
        out.put({{"x", *slice_x}, {"y_roots", implicit_slice_x(*slice_x, yr)}});
        return 0;
      }
      if (slice_y_opt->count() > 0) {
        out.put({{"y", *slice_y}, {"x_roots", implicit_slice_y(*slice_y, xr)}});
        return 0;
      }
      const auto res = st.pick<std::size_t>(res_opt, resolution, "resolution", 400);
      require_grid(res, "resolution");
      io::write_implicit_csv(out.stream(), implicit_curve_sample(xr, yr, res));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "isoperim: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "isoperim: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

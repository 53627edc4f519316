#include "wedge/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "wedge/continuation.hpp"
#include "wedge/interpolation.hpp"
#include "wedge/polynomial_io.hpp"
#include "wedge/wedge_geometry.hpp"
#include "wedge/zoo.hpp"

namespace wedge {

using nlohmann::json;

const std::vector<std::string>& run_commands() {
  static const std::vector<std::string> commands{
      "constants", "reconstruct", "radius", "wedge-check", "zoo", "sweep"};
  return commands;
}

namespace {

void check_command(const std::string& c) {
  for (const auto& k : run_commands()) {
    if (k == c) return;
  }
  throw ConfigError("unknown command '" + c + "'");
}

std::uint64_t parse_seed(const json& j) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    throw ConfigError("key 'seed' must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  return merge_run_config(RunConfig{}, j);
}

RunConfig merge_run_config(RunConfig base, const json& overrides) {
  if (!overrides.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : overrides.items()) {
    if (key == "command") {
      if (!value.is_string()) throw ConfigError("key 'command' must be a string");
      const auto c = value.get<std::string>();
      check_command(c);
      if (!base.command.empty() && base.command != c) {
        throw ConfigError("key 'command' is '" + c + "' but the subcommand is '" +
                          base.command + "'");
      }
      base.command = c;
    } else if (key == "params") {
      if (!value.is_object()) throw ConfigError("key 'params' must be an object");
      for (const auto& [pk, pv] : value.items()) base.params[pk] = pv;
    } else if (key == "seed") {
      base.seed = parse_seed(value);
    } else if (key == "output_path") {
      if (!value.is_string()) throw ConfigError("key 'output_path' must be a string");
      base.output_path = value.get<std::string>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  if (base.command.empty()) throw ConfigError("missing key 'command'");
  return base;
}

namespace {

// ---------------------------------------------------------------- params

/// Typed, strict access to one command's params. Keys not consumed by the
/// command are either forwarded as zoo parameters or rejected.
class Params {
 public:
  explicit Params(const json& j) : j_(j) {}

  bool has(const std::string& k) {
    used_.insert(k);
    return j_.contains(k);
  }
  const json& raw(const std::string& k) {
    used_.insert(k);
    if (!j_.contains(k)) throw ConfigError("missing key '" + k + "'");
    return j_.at(k);
  }
  double number(const std::string& k, std::optional<double> fallback = {}) {
    if (!has(k)) {
      if (fallback) return *fallback;
      throw ConfigError("missing key '" + k + "'");
    }
    const json& v = j_.at(k);
    if (!v.is_number()) throw ConfigError("key '" + k + "' must be a number");
    return v.get<double>();
  }
  std::int64_t integer(const std::string& k, std::optional<std::int64_t> fallback,
                       std::int64_t lo, std::int64_t hi) {
    if (!has(k)) {
      if (fallback) return *fallback;
      throw ConfigError("missing key '" + k + "'");
    }
    const json& v = j_.at(k);
    if (!v.is_number_integer()) throw ConfigError("key '" + k + "' must be an integer");
    const auto x = v.get<std::int64_t>();
    if (x < lo || x > hi) {
      throw ConfigError("key '" + k + "' must lie in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
    return x;
  }
  std::string string(const std::string& k, std::optional<std::string> fallback = {}) {
    if (!has(k)) {
      if (fallback) return *fallback;
      throw ConfigError("missing key '" + k + "'");
    }
    const json& v = j_.at(k);
    if (!v.is_string()) throw ConfigError("key '" + k + "' must be a string");
    return v.get<std::string>();
  }
  /// Keys never asked for.
  std::vector<std::string> leftovers() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : j_.items()) {
      if (!used_.contains(k)) out.push_back(k);
    }
    return out;
  }
  void reject_leftovers() const {
    const auto rest = leftovers();
    if (!rest.empty()) throw ConfigError("unknown key '" + rest.front() + "'");
  }
  const json& at(const std::string& k) const { return j_.at(k); }

 private:
  const json& j_;
  std::set<std::string> used_;
};

ZooParams zoo_params_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("key '" + where + "' must be an object");
  ZooParams out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ConfigError("zoo parameter '" + k + "' must be a number");
    out[k] = v.get<double>();
  }
  return out;
}

/// The function named by `function` (zoo name or "serialized-poly"). Unused
/// top-level keys become zoo parameters, so make_zoo names any stray key.
ZooFunction build_function(Params& p, const std::string& name_key) {
  const std::string name = p.string(name_key);
  if (name == "serialized-poly") {
    const json& poly = p.raw("poly");
    p.reject_leftovers();
    try {
      return zoo_polynomial(poly_from_json<Complex>(poly));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad key 'poly': ") + e.what());
    }
  }
  ZooParams zp;
  if (p.has("function_params")) zp = zoo_params_from(p.at("function_params"), "function_params");
  for (const auto& k : p.leftovers()) {
    if (!p.at(k).is_number()) throw ConfigError("unknown key '" + k + "'");
    zp[k] = p.at(k).get<double>();
  }
  try {
    return make_zoo(name, zp);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Eigen::VectorXd vector_from(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) throw ConfigError("key '" + key + "' must be a non-empty array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError("key '" + key + "' must hold numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

struct WedgeSetup {
  RealWedge wedge;
  double overlap = 0.0;
  std::string kind;
};

/// Wedge JSON: {"kind": box|orthant|polyhedral|hermitian|chebyshev, "extents",
/// "one", "halfspaces", "m", "overlap", "measure_samples"}. Without a spec the
/// function's suggested box is used.
WedgeSetup build_wedge(const json* spec, const ZooFunction* f, std::uint64_t seed,
                       std::size_t threads) {
  MeasureOptions mopts;
  mopts.seed = seed;
  mopts.threads = threads;
  WedgeSetup out;
  out.overlap = f ? f->overlap : 0.0;
  if (spec == nullptr) {
    if (f == nullptr) throw ConfigError("missing key 'wedge'");
    out.kind = "box";
    out.wedge = zoo_wedge(*f, mopts);
    return out;
  }
  if (!spec->is_object()) throw ConfigError("key 'wedge' must be an object");
  Params w(*spec);
  out.kind = w.string("kind");
  static const std::map<std::string, std::set<std::string>> kind_keys{
      {"box", {"extents"}},
      {"orthant", {"one"}},
      {"polyhedral", {"halfspaces", "one"}},
      {"hermitian", {"m"}},
      {"chebyshev", {}}};
  const auto kk = kind_keys.find(out.kind);
  if (kk == kind_keys.end()) throw ConfigError("unknown wedge kind '" + out.kind + "'");
  for (const auto& [k, v] : spec->items()) {
    if (k != "kind" && k != "measure_samples" && k != "overlap" && !kk->second.contains(k)) {
      throw ConfigError("unknown wedge key '" + k + "'");
    }
  }
  mopts.samples = static_cast<std::size_t>(
      w.integer("measure_samples", 100000, 1000, 100000000));
  if (w.has("overlap")) out.overlap = w.number("overlap");
  try {
    if (out.kind == "box") {
      out.wedge = box_wedge(vector_from(w.raw("extents"), "extents"), mopts);
    } else if (out.kind == "orthant") {
      out.wedge = cone_wedge(orthant_cone(vector_from(w.raw("one"), "one")), {mopts});
    } else if (out.kind == "polyhedral") {
      const json& h = w.raw("halfspaces");
      const Eigen::VectorXd one = vector_from(w.raw("one"), "one");
      if (!h.is_array() || h.empty()) throw ConfigError("key 'halfspaces' must be a non-empty array");
      Eigen::MatrixXd a(static_cast<Eigen::Index>(h.size()), one.size());
      for (std::size_t r = 0; r < h.size(); ++r) {
        const Eigen::VectorXd row = vector_from(h[r], "halfspaces");
        if (row.size() != one.size()) throw ConfigError("key 'halfspaces' rows have wrong length");
        a.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      out.wedge = cone_wedge(polyhedral_cone(a, one), {mopts});
    } else if (out.kind == "hermitian") {
      const auto m = static_cast<std::size_t>(w.integer("m", std::nullopt, 1, 4));
      out.wedge = cone_wedge(hermitian_cone(m), {mopts});
    } else if (out.kind == "chebyshev") {
      out.wedge = chebyshev_wedge(mopts);
    } else {
      throw ConfigError("unknown wedge kind '" + out.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad wedge: ") + e.what());
  }
  w.reject_leftovers();
  if (f != nullptr && out.wedge.nvars != f->nvars) {
    throw ConfigError("wedge has " + std::to_string(out.wedge.nvars) +
                      " variables but the function has " + std::to_string(f->nvars));
  }
  return out;
}

// ---------------------------------------------------------------- output

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Outputs {
 public:
  explicit Outputs(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
  }
  void write(const std::string& name, const std::string& content) const {
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) throw Error("cannot write '" + path.string() + "'");
  }
  void write_json(const std::string& name, const json& j) const {
    write(name, j.dump(2) + "\n");
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

std::size_t threads_of(Params& p) {
  return static_cast<std::size_t>(p.integer("threads", 0, 0, 1024));
}

RadiusOptions radius_options(Params& p, std::uint64_t seed, std::size_t threads) {
  RadiusOptions o;
  o.germ.degree = static_cast<unsigned>(p.integer("degree", 24, 0, 64));
  o.germ.rays = static_cast<std::size_t>(p.integer("rays", 0, 0, 1000000));
  o.germ.rho = p.number("rho", 0.9);
  if (!(o.germ.rho > 0.0 && o.germ.rho < 1.0)) throw ConfigError("key 'rho' must lie in (0, 1)");
  o.germ.seed = seed;
  o.germ.threads = threads;
  o.sn_samples.samples = static_cast<std::size_t>(p.integer("samples", 400, 1, 1000000));
  o.sn_samples.degree = o.germ.degree;
  o.sn_samples.rho = o.germ.rho;
  o.sn_samples.seed = seed;
  o.sn_samples.threads = threads;
  return o;
}

json germ_json(const GermEstimate& g, bool with_parts) {
  json j;
  j["nvars"] = g.nvars;
  j["degree"] = g.l1_bounds.empty() ? 0 : g.l1_bounds.size() - 1;
  j["rays_used"] = g.rays_used;
  j["rays_rejected"] = g.rays_rejected;
  j["l1_bounds"] = g.l1_bounds;
  j["residuals"] = g.residuals;
  j["conditions"] = g.conditions;
  j["fitted_K"] = g.fitted_K;
  j["fitted_C"] = g.fitted_C;
  j["regression_C"] = num(g.regression_C);
  j["radius"] = num(g.radius);
  j["infinite_radius"] = g.infinite_radius;
  if (with_parts) {
    json parts = json::array();
    for (const auto& h : g.parts) parts.push_back(to_json(h.base()));
    j["parts"] = std::move(parts);
  }
  return j;
}

std::string l1_csv(const GermEstimate& g) {
  std::string s = "d,l1_bound,envelope\n";
  for (std::size_t d = 0; d < g.l1_bounds.size(); ++d) {
    s += std::to_string(d) + "," + fmt(g.l1_bounds[d]) + "," +
         fmt(g.fitted_K * std::pow(g.fitted_C, static_cast<double>(d))) + "\n";
  }
  return s;
}

json wedge_json(const WedgeSetup& w) {
  json j;
  j["kind"] = w.kind;
  j["nvars"] = w.wedge.nvars;
  j["scale"] = std::vector<double>(w.wedge.scale.data(),
                                   w.wedge.scale.data() + w.wedge.scale.size());
  j["measure"] = w.wedge.measure_estimate;
  j["measure_lower"] = w.wedge.measure_lower;
  j["overlap"] = w.overlap;
  return j;
}

// ---------------------------------------------------------------- commands

int cmd_constants(Params& p, const Outputs& out, std::ostream& os) {
  const auto n = static_cast<std::size_t>(p.integer("n", std::nullopt, 0, 64));
  const double prob = p.number("p");
  const auto dmax = static_cast<std::size_t>(p.integer("d_max", 10, 0, 1000));
  p.reject_leftovers();
  const BoundConstants bc = compute_constants(n, prob);
  std::string csv = "d,K_C_pow_d,chain_bound\n";
  for (std::size_t d = 0; d <= dmax; ++d) {
    csv += std::to_string(d) + "," + fmt(bc.K * std::pow(bc.C, static_cast<double>(d))) +
           "," + fmt(chain_bound(n, prob, d)) + "\n";
  }
  json j;
  j["n"] = n;
  j["p"] = prob;
  j["K"] = bc.K;
  j["C"] = bc.C;
  json levels = json::array();
  for (const auto& lv : constants_chain(n, prob)) {
    levels.push_back({{"dimension", lv.dimension},
                      {"p", lv.p},
                      {"axis_measure", lv.axis_measure},
                      {"level_K", lv.level_K},
                      {"level_C", lv.level_C}});
  }
  j["levels"] = std::move(levels);
  out.write("constants.csv", csv);
  out.write_json("constants.json", j);
  os << "K = " << fmt(bc.K) << ", C = " << fmt(bc.C) << "\n";
  return 0;
}

int cmd_reconstruct(Params& p, const Outputs& out, std::ostream& os,
                    std::uint64_t seed, bool certify) {
  const std::size_t threads = threads_of(p);
  const json* wspec = p.has("wedge") ? &p.at("wedge") : nullptr;
  const RadiusOptions opts = radius_options(p, seed, threads);
  const ZooFunction f = build_function(p, "function");
  const WedgeSetup w = build_wedge(wspec, &f, seed, threads);
  const auto oracle = restrict_to_theorem_domain(f.eval, w.wedge, w.overlap);

  if (!certify) {
    const GermEstimate g = reconstruct_germ(oracle, w.wedge, opts.germ);
    json j = germ_json(g, true);
    j["function"] = f.name;
    j["wedge"] = wedge_json(w);
    out.write_json("germ.json", j);
    out.write("l1_bounds.csv", l1_csv(g));
    os << "fitted_C = " << fmt(g.fitted_C) << ", radius = "
       << (g.infinite_radius ? std::string("infinite") : fmt(g.radius)) << "\n";
    return 0;
  }
  const RadiusReport r = estimate_radius(oracle, w.wedge, opts);
  json j;
  j["function"] = f.name;
  j["wedge"] = wedge_json(w);
  j["germ"] = germ_json(r.germ, false);
  j["n0"] = r.sn.n0;
  j["sn_fraction"] = r.sn.fraction;
  j["constants"] = {{"n", r.constants.n},
                    {"p", r.constants.p},
                    {"K", r.constants.K},
                    {"C", r.constants.C}};
  j["certified_radius_unit"] = r.certified_radius_unit;
  j["certified_radius"] = r.certified_radius;
  j["tail_bound_half_radius"] = num(r.tail_bound_half_radius);
  out.write_json("radius.json", j);
  out.write("l1_bounds.csv", l1_csv(r.germ));
  os << "N0 = " << fmt(r.sn.n0) << ", certified radius = " << fmt(r.certified_radius)
     << ", fitted radius = "
     << (r.germ.infinite_radius ? std::string("infinite") : fmt(r.germ.radius)) << "\n";
  return 0;
}

int cmd_sweep(Params& p, const Outputs& out, std::ostream& os, std::uint64_t seed) {
  const std::size_t threads = threads_of(p);
  const json* wspec = p.has("wedge") ? &p.at("wedge") : nullptr;
  const RadiusOptions opts = radius_options(p, seed, threads);
  std::vector<double> scales{1.0, 2.0, 4.0};
  if (p.has("scales")) {
    const Eigen::VectorXd s = vector_from(p.at("scales"), "scales");
    scales.assign(s.data(), s.data() + s.size());
    for (double v : scales) {
      if (!(v > 0.0)) throw ConfigError("key 'scales' must hold positive numbers");
    }
  }
  const ZooFunction f = build_function(p, "function");
  const WedgeSetup w = build_wedge(wspec, &f, seed, threads);
  const auto points = rescaling_sweep(f.eval, w.wedge, w.overlap, scales, opts);

  std::string csv = "scale,status,n0,fraction,radius,fitted_radius,fitted_C\n";
  json rows = json::array();
  for (const auto& pt : points) {
    csv += fmt(pt.scale) + "," + pt.status + "," + fmt(pt.n0) + "," + fmt(pt.fraction) +
           "," + fmt(pt.radius) + "," +
           (pt.infinite_fitted_radius ? std::string("inf") : fmt(pt.fitted_radius)) + "," +
           fmt(pt.fitted_C) + "\n";
    rows.push_back({{"scale", pt.scale},
                    {"status", pt.status},
                    {"message", pt.message},
                    {"n0", pt.n0},
                    {"fraction", pt.fraction},
                    {"radius", num(pt.radius)},
                    {"fitted_radius", num(pt.fitted_radius)},
                    {"fitted_C", pt.fitted_C},
                    {"infinite_fitted_radius", pt.infinite_fitted_radius}});
  }
  json j;
  j["function"] = f.name;
  j["wedge"] = wedge_json(w);
  j["points"] = std::move(rows);
  out.write("sweep.csv", csv);
  out.write_json("sweep.json", j);
  for (const auto& pt : points) {
    os << "scale " << fmt(pt.scale) << ": " << pt.status << ", radius " << fmt(pt.radius)
       << "\n";
  }
  return 0;
}

int cmd_wedge_check(Params& p, const Outputs& out, std::ostream& os, std::ostream& es,
                    std::uint64_t seed) {
  const std::size_t threads = threads_of(p);
  const auto checks = static_cast<std::size_t>(p.integer("checks", 1000, 1, 10000000));
  const json* wspec = p.has("wedge") ? &p.at("wedge") : nullptr;
  std::optional<ZooFunction> f;
  if (p.has("function")) f = build_function(p, "function");
  p.reject_leftovers();
  const WedgeSetup w = build_wedge(wspec, f ? &*f : nullptr, seed, threads);
  const WedgeValidation v = validate_wedge(w.wedge, checks, seed);
  json j = wedge_json(w);
  j["starlike_checks"] = v.starlike_checks;
  j["starlike_violations"] = v.starlike_violations;
  j["valid"] = v.valid;
  out.write_json("wedge_check.json", j);
  os << "measure = " << fmt(v.measure) << ", starlike violations = "
     << v.starlike_violations << "/" << v.starlike_checks << "\n";
  if (!v.valid) {
    es << "wedge is not a real wedge (measure " << fmt(v.measure) << ", "
       << v.starlike_violations << " starlike violations)\n";
    return 2;
  }
  return 0;
}

int cmd_zoo(Params& p, const Outputs& out, std::ostream& os) {
  const auto grid = static_cast<std::size_t>(p.integer("grid", 50, 2, 2000));
  const double extent = p.number("extent", 1.0);
  if (!(extent > 0.0)) throw ConfigError("key 'extent' must be positive");
  if (!p.has("name")) {
    p.reject_leftovers();
    json list = json::array();
    for (const auto& name : zoo_names()) {
      const ZooFunction f = make_zoo(name);
      json defaults = json::object();
      for (const auto& [k, v] : zoo_default_params(name)) defaults[k] = v;
      list.push_back({{"name", name},
                      {"nvars", f.nvars},
                      {"params", defaults},
                      {"singular_distance", num(f.singular_distance)},
                      {"profile", to_string(f.profile)}});
    }
    out.write_json("zoo_list.json", list);
    for (const auto& name : zoo_names()) os << name << "\n";
    return 0;
  }
  const ZooFunction f = build_function(p, "name");
  auto coord = [&](std::size_t k) {
    return -extent + 2.0 * extent * static_cast<double>(k) / static_cast<double>(grid - 1);
  };
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(f.nvars));
  std::string csv;
  if (f.nvars == 1) {
    csv = "x,abs_f\n";
    for (std::size_t i = 0; i < grid; ++i) {
      z(0) = coord(i);
      csv += fmt(coord(i)) + "," + fmt(std::abs(f.eval(z))) + "\n";
    }
  } else {
    csv = "z,w,abs_f\n";
    for (std::size_t i = 0; i < grid; ++i) {
      for (std::size_t k = 0; k < grid; ++k) {
        z(0) = coord(i);
        z(1) = coord(k);
        const double v = std::abs(f.eval(z));
        csv += fmt(coord(i)) + "," + fmt(coord(k)) + "," +
               (std::isfinite(v) ? fmt(v) : std::string("inf")) + "\n";
      }
    }
  }
  out.write("zoo_" + f.name + ".csv", csv);
  os << "singular distance = " << fmt(f.singular_distance) << "\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& os, std::ostream& es) {
  try {
    check_command(config.command);
    if (!config.params.is_object()) throw ConfigError("key 'params' must be an object");
    Params p(config.params);
    const Outputs out(config.output_path);
    const std::string& c = config.command;
    if (c == "constants") return cmd_constants(p, out, os);
    if (c == "reconstruct") return cmd_reconstruct(p, out, os, config.seed, false);
    if (c == "radius") return cmd_reconstruct(p, out, os, config.seed, true);
    if (c == "sweep") return cmd_sweep(p, out, os, config.seed);
    if (c == "wedge-check") return cmd_wedge_check(p, out, os, es, config.seed);
    return cmd_zoo(p, out, os);
  } catch (const HypothesisFailure& e) {
    es << "hypothesis failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    es << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wedge

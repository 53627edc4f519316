// Command-line front end. Flags build a RunConfig; --config merges a JSON
// file on top of them.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wedge/cli.hpp"

namespace {

using nlohmann::json;

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw wedge::ConfigError("cannot parse " + what + ": " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw wedge::ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_json_text(ss.str(), "'" + path + "'");
}

/// Inline JSON object or a path to a JSON file.
json json_arg(const std::string& v, const std::string& what) {
  if (!v.empty() && v.front() == '{') return parse_json_text(v, what);
  return load_json_file(v);
}

/// "t=4,seed=2" or an inline JSON object.
json params_arg(const std::string& v) {
  if (!v.empty() && v.front() == '{') return parse_json_text(v, "--params");
  json out = json::object();
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw wedge::ConfigError("--params entry '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double d = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      out[key] = d;
    } catch (const std::exception&) {
      throw wedge::ConfigError("--params value for '" + key + "' is not a number");
    }
  }
  return out;
}

json scales_arg(const std::string& v) {
  if (!v.empty() && v.front() == '[') return parse_json_text(v, "--scales");
  json out = json::array();
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw wedge::ConfigError("--scales entry '" + item + "' is not a number");
    }
  }
  return out;
}

struct Flags {
  std::string config, out = ".", function, params, wedge, name, scales;
  std::uint64_t seed = 0;
  long long n = 0, d_max = 0, degree = 0, rays = 0, grid = 0, threads = 0,
            samples = 0, checks = 0;
  double p = 0.0, rho = 0.0, extent = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wedge-of-the-edge toolkit"};
  app.require_subcommand(1);
  Flags fl;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", fl.config, "JSON run config; overrides flags");
    sub->add_option("--out", fl.out, "output directory");
    sub->add_option("--seed", fl.seed, "random seed");
  };
  auto function_flags = [&](CLI::App* sub) {
    sub->add_option("--function", fl.function, "zoo name or serialized-poly");
    sub->add_option("--params", fl.params, "function parameters: k=v,... or JSON");
    sub->add_option("--wedge", fl.wedge, "wedge JSON (inline or file)");
    sub->add_option("--degree", fl.degree, "truncation degree D");
    sub->add_option("--rays", fl.rays, "number of ray directions");
    sub->add_option("--rho", fl.rho, "sampling circle radius");
    sub->add_option("--threads", fl.threads, "worker threads (0 = hardware)");
  };

  auto* constants = app.add_subcommand("constants", "per-degree bound constants");
  common(constants);
  constants->add_option("--n", fl.n, "dimension");
  constants->add_option("--p", fl.p, "measure lower bound");
  constants->add_option("--d-max", fl.d_max, "largest degree");

  auto* reconstruct = app.add_subcommand("reconstruct", "germ reconstruction");
  common(reconstruct);
  function_flags(reconstruct);

  auto* radius = app.add_subcommand("radius", "reconstruct and certify");
  common(radius);
  function_flags(radius);
  radius->add_option("--samples", fl.samples, "wedge samples for N0");

  auto* wedge_check = app.add_subcommand("wedge-check", "starlike and measure validation");
  common(wedge_check);
  wedge_check->add_option("--wedge", fl.wedge, "wedge JSON (inline or file)");
  wedge_check->add_option("--checks", fl.checks, "starlike spot checks");
  wedge_check->add_option("--threads", fl.threads, "worker threads");

  auto* zoo = app.add_subcommand("zoo", "list zoo functions or emit a grid");
  common(zoo);
  zoo->add_option("--name", fl.name, "zoo function");
  zoo->add_option("--params", fl.params, "function parameters: k=v,... or JSON");
  zoo->add_option("--grid", fl.grid, "grid points per axis");
  zoo->add_option("--extent", fl.extent, "grid covers [-extent, extent]");

  auto* sweep = app.add_subcommand("sweep", "rescaling sweep");
  common(sweep);
  function_flags(sweep);
  sweep->add_option("--scales", fl.scales, "comma-separated scales");
  sweep->add_option("--samples", fl.samples, "wedge samples for N0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse error is a malformed config.
    return app.exit(e) == 0 ? 0 : 1;
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    wedge::RunConfig cfg;
    cfg.command = sub->get_name();
    cfg.seed = fl.seed;
    cfg.output_path = fl.out;
    json& p = cfg.params;
    auto given = [&](const char* flag) {
      const CLI::Option* o = sub->get_option_no_throw(flag);
      return o != nullptr && o->count() > 0;
    };
    if (given("--n")) p["n"] = fl.n;
    if (given("--p")) p["p"] = fl.p;
    if (given("--d-max")) p["d_max"] = fl.d_max;
    if (given("--function")) p["function"] = fl.function;
    if (given("--name")) p["name"] = fl.name;
    if (given("--params")) p["function_params"] = params_arg(fl.params);
    if (given("--wedge")) p["wedge"] = json_arg(fl.wedge, "--wedge");
    if (given("--degree")) p["degree"] = fl.degree;
    if (given("--rays")) p["rays"] = fl.rays;
    if (given("--rho")) p["rho"] = fl.rho;
    if (given("--threads")) p["threads"] = fl.threads;
    if (given("--samples")) p["samples"] = fl.samples;
    if (given("--checks")) p["checks"] = fl.checks;
    if (given("--grid")) p["grid"] = fl.grid;
    if (given("--extent")) p["extent"] = fl.extent;
    if (given("--scales")) p["scales"] = scales_arg(fl.scales);
    if (!fl.config.empty()) cfg = wedge::merge_run_config(cfg, load_json_file(fl.config));
    return wedge::run(cfg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

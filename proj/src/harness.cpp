// Copyright 2026 The revmet Authors
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

#include "revmet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "revmet/echo.hpp"
#include "revmet/fisher.hpp"
#include "revmet/ico_switch.hpp"
#include "revmet/random.hpp"
#include "revmet/time_loop.hpp"
#include "revmet/weak_value.hpp"

namespace revmet {

namespace {

using json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

struct ProtocolInfo {
  Protocol id;
  const char* name;
  std::vector<ParamSpec> params;
};

const std::vector<ProtocolInfo>& registry() {
  static const std::vector<ProtocolInfo> table = {
      {Protocol::kEcho, "echo",
       {{"alpha", 0.5, -1e3, 1e3},
        {"random", 0, 0, 1, true},
        {"qubits", 1, 1, 3, true},
        {"instance", 0, 0, 1e9, true}}},
      {Protocol::kParamp, "paramp",
       {{"r", 0.5, 0, 3},
        {"alpha", 0.1, -1e3, 1e3},
        {"g", 1, -1e3, 1e3},
        {"t", 1, -1e3, 1e3},
        {"phi", kPi / 2, -1e3, 1e3},
        {"fock_dim", 60, 8, 400, true}}},
      {Protocol::kSu11, "su11",
       {{"r", 0.5, 0, 2}, {"alpha", 1e-3, -1e3, 1e3}, {"fock_dim", 25, 4, 40, true}}},
      {Protocol::kWva, "wva",
       {{"alpha", 1.0 / 1900.0, 0, 1e3},
        {"spread", 1, 1e-9, 1e9},
        {"postselect", 0.9, -1e3, 1e3},
        {"grid_points", 4096, 64, 65536, true}}},
      {Protocol::kNaive, "naive", {{"alpha", 1.0, 1e-12, kPi - 1e-12}}},
      {Protocol::kHindsight, "hindsight",
       {{"alpha", kPi / 3, -1e3, 1e3}, {"theta", kPi / 2, 0, kPi}, {"phi", 0, -1e3, 1e3}}},
      {Protocol::kAgnostic, "agnostic",
       {{"alpha", kPi / 2, -1e3, 1e3}, {"theta", kPi / 2, 0, kPi}, {"phi", 0, -1e3, 1e3}}},
      {Protocol::kPositronium, "positronium",
       {{"alpha", 0.7, -1e3, 1e3}, {"theta", kPi / 2, 0, kPi}, {"phi", 0, -1e3, 1e3}}},
      {Protocol::kAgnosticDephasing, "agnostic-dephasing",
       {{"s", 0.5, 0, 1}, {"theta", kPi / 2, 0, kPi}, {"phi", 0, -1e3, 1e3}}},
      {Protocol::kIcoSeqVsSwitch, "ico-seq-vs-switch",
       {{"r", 0.5, 0, 1}, {"family", 0, 0, 1, true}, {"alpha", 0.3, -1e3, 1e3}}},
      {Protocol::kIcoNoiseRobust, "ico-noise-robust",
       {{"r", 1.0, 0, 1}, {"alpha", 0.5, -1e3, 1e3}, {"system_mixed", 0, 0, 1, true}}},
  };
  return table;
}

const ProtocolInfo& info(Protocol p) {
  for (const auto& e : registry()) {
    if (e.id == p) return e;
  }
  throw std::logic_error("unregistered protocol");
}

std::vector<double> linspace(double start, double stop, long long count) {
  std::vector<double> v;
  if (count == 1) return {start};
  for (long long i = 0; i < count; ++i) {
    v.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return v;
}

void check_value(const ParamSpec& spec, double v, const std::string& path) {
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  if (v < spec.min || v > spec.max) {
    throw ConfigError(path, fmt::format("{} outside [{}, {}]", v, spec.min, spec.max));
  }
  if (spec.integer && v != std::floor(v)) throw ConfigError(path, "must be an integer");
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Multinomial sample by sequential binomials.
std::vector<long long> sample_counts(const RealVector& p, long long shots, Rng& rng) {
  std::vector<long long> counts(static_cast<std::size_t>(p.size()), 0);
  long long left = shots;
  double mass = 1.0;
  for (Eigen::Index k = 0; k < p.size() && left > 0; ++k) {
    const double q = mass > 0.0 ? std::clamp(p(k) / mass, 0.0, 1.0) : 0.0;
    const long long c =
        k + 1 == p.size() ? left : std::binomial_distribution<long long>(left, q)(rng);
    counts[static_cast<std::size_t>(k)] = c;
    left -= c;
    mass -= p(k);
  }
  return counts;
}

bool fi_within(double fi, double bound) {
  return fi >= tol::kFiFloor && fi <= bound + 1e-6 * std::max(1.0, std::abs(bound));
}

// --- per-protocol point evaluation -------------------------------------------

using Values = std::map<std::string, double>;

void put(PointRecord& r, const std::string& key, double v) { r.extras.emplace_back(key, v); }

void point_echo(const Values& v, std::uint64_t seed, PointRecord& r) {
  EchoSpec spec{pauli::identity(), HermitianOperator(pauli::z() / 2.0), StateVector::basis(2, 0),
                v.at("alpha")};
  if (v.at("random") != 0.0) {
    const auto dim = std::size_t{1} << static_cast<unsigned>(v.at("qubits"));
    std::seed_seq seq{seed, static_cast<std::uint64_t>(v.at("instance"))};
    Rng rng(seq);
    Matrix prep = random_unitary(dim, rng);
    spec = EchoSpec{prep, random_hermitian(dim, rng), StateVector::basis(dim, 0), v.at("alpha")};
  } else {
    Matrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    spec.prep = h / std::sqrt(2.0);
  }
  const EchoRun run = run_echo(spec);
  r.labels = run.distribution.labels;
  r.distribution = run.distribution.eval(spec.alpha);
  r.fi = run.fi;
  r.qfi = run.qfi;
  put(r, "p0", run.p0);
  if (spec.alpha != 0.0) {
    const EchoGapReport gap = echo_fi_matches_qfi(spec);
    put(r, "gap", gap.gap);
    put(r, "shrink_ratio", gap.shrink_ratio);
    if (gap.outside_weak_regime) r.warnings.push_back("|alpha| > 0.05: outside weak regime");
  }
  r.invariants_ok = fi_within(run.fi, run.qfi);
}

void point_paramp(const Values& v, PointRecord& r) {
  SqueezeSpec spec;
  spec.r = v.at("r");
  spec.phi = v.at("phi");
  spec.g = v.at("g");
  spec.t = v.at("t");
  spec.fock_dim = static_cast<std::size_t>(v.at("fock_dim"));
  const KickReport k = parametric_amplification(spec, v.at("alpha"));
  put(r, "p_shift", k.p_shift);
  put(r, "p_shift_unsqueezed", k.p_shift_unsqueezed);
  put(r, "ratio", k.ratio);
  put(r, "exp_r", std::exp(spec.r));
  put(r, "tail_mass", k.tail_mass);
  r.invariants_ok = k.tail_mass < tol::kFockTail;
}

void point_su11(const Values& v, PointRecord& r) {
  const Su11Result s =
      su11_interferometer(v.at("r"), v.at("alpha"), static_cast<std::size_t>(v.at("fock_dim")));
  r.distribution = s.distribution.eval(v.at("alpha"));
  r.fi = s.fi;
  r.qfi = s.qfi;
  put(r, "vacuum_probability", s.vacuum_probability);
  put(r, "tail_mass", s.tail_mass);
  put(r, "qfi_ideal", std::pow(std::sinh(2.0 * v.at("r")), 2));
  r.invariants_ok = fi_within(s.fi, s.qfi);
}

void point_wva(const Values& v, PointRecord& r) {
  Vector plus(2);
  plus << 1.0, 1.0;
  Vector post(2);
  post << 1.0, -v.at("postselect");
  const WvaSpec spec{HermitianOperator(pauli::z()), StateVector::normalized(plus),
                     StateVector::normalized(post),
                     gaussian_probe(v.at("spread"), 0.0,
                                    static_cast<std::size_t>(v.at("grid_points"))),
                     v.at("alpha")};
  const FiComparison cmp = fi_comparison(spec);
  const Postselected ps = couple_and_postselect(spec);
  const WeakRegimeReport ab = weak_regime_validate(spec);
  r.distribution = ps.probe.probabilities();
  r.fi = cmp.fi_ps;
  r.qfi = cmp.qfi_joint;
  r.success_prob = cmp.success_prob;
  put(r, "fi_no_ps", cmp.fi_no_ps);
  put(r, "fi_position_only", cmp.fi_position_only);
  put(r, "analytic_no_ps", cmp.analytic_no_ps);
  put(r, "analytic_ps", cmp.analytic_ps);
  put(r, "fi_ratio", cmp.fi_no_ps > 0.0 ? cmp.fi_ps / cmp.fi_no_ps : kInf);
  put(r, "weak_value_re", cmp.weak_value.real());
  put(r, "weak_value_im", cmp.weak_value.imag());
  put(r, "mean_shift", ps.probe.mean_position());
  put(r, "weakness_ratio", weakness_ratio(spec));
  put(r, "approx_infidelity", ab.infidelity);
  put(r, "approx_sine_distance", ab.sine_distance);
  if (ab.outside_weak_regime) r.warnings.push_back("alpha*|A_w| > 0.05*spread: outside weak regime");
  r.invariants_ok = cmp.success_prob * cmp.fi_ps <= cmp.qfi_joint + 1e-3;
}

void point_naive(const Values& v, PointRecord& r) {
  const std::vector<double> q = naive_probe_qfis(v.at("alpha"));
  r.fi = naive_average_fi(v.at("alpha"));
  put(r, "qfi_probe_x", q[0]);
  put(r, "qfi_probe_y", q[1]);
  put(r, "qfi_probe_z", q[2]);
  r.invariants_ok = fi_within(*r.fi, 1.0);
}

void point_time_loop(Protocol p, const Values& v, PointRecord& r) {
  TimeLoopResult res;
  const Eigen::Vector3d n = direction(v.at("theta"), v.at("phi"));
  if (p == Protocol::kAgnosticDephasing) {
    res = agnostic_dephasing(v.at("s"), n);
  } else {
    const FieldSpec field{n, v.at("alpha")};
    res = p == Protocol::kHindsight ? hindsight(field)
          : p == Protocol::kAgnostic ? agnostic(field)
                                     : positronium(field);
  }
  r.labels = res.labels;
  r.distribution = res.distribution;
  r.fi = res.fi;
  put(r, "theoretical_max", res.theoretical_max);
  if (p != Protocol::kHindsight) put(r, "survival", res.distribution(0));
  r.invariants_ok = std::isinf(res.fi) || fi_within(res.fi, res.theoretical_max);
}

void point_ico_order(const Values& v, PointRecord& r) {
  OrderingReport rep;
  if (v.at("family") == 0.0) {
    rep = switch_vs_sequential_qfi(depolarizing_family(2), DensityOperator::from_pure(StateVector::basis(2, 0)),
                                   v.at("r"));
  } else {
    rep = switch_vs_sequential_qfi(unitary_family(HermitianOperator(pauli::z() / 2.0)),
                                   DensityOperator::from_pure(plus_control()), v.at("alpha"));
  }
  r.qfi = rep.qfi_switch;
  put(r, "qfi_switch", rep.qfi_switch);
  put(r, "qfi_seq", rep.qfi_seq);
  put(r, "relative_gain", rep.relative_gain);
  put(r, "channel_queries", rep.channel_queries);
  r.invariants_ok = rep.qfi_switch >= rep.qfi_seq - 1e-6;
}

void point_ico_noise(const Values& v, PointRecord& r) {
  const DensityOperator rho_s = v.at("system_mixed") != 0.0
                                    ? DensityOperator::maximally_mixed(2)
                                    : DensityOperator::from_pure(plus_control());
  const HermitianOperator gen(pauli::z() / 2.0);
  const auto u = [gen](double a) { return unitary_from_generator(gen, a); };
  const ControlReadout rep =
      noise_robust_control_readout(u, depolarize(v.at("r"), 2), rho_s,
                                   DensityOperator::from_pure(plus_control()), v.at("alpha"));
  r.qfi = rep.qfi_joint;
  put(r, "qfi_control", rep.qfi_control);
  put(r, "qfi_system", rep.qfi_system);
  put(r, "qfi_joint", rep.qfi_joint);
  r.invariants_ok = rep.qfi_joint >= rep.qfi_control - 1e-6 && rep.qfi_joint >= rep.qfi_system - 1e-6;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

}  // namespace

// --- protocol ids -------------------------------------------------------------

std::string to_string(Protocol p) { return info(p).name; }

Protocol parse_protocol(const std::string& id) {
  for (const auto& e : registry()) {
    if (id == e.name) return e.id;
  }
  throw ConfigError("protocol", "unknown protocol id '" + id + "'");
}

const std::vector<Protocol>& all_protocols() {
  static const std::vector<Protocol> ids = [] {
    std::vector<Protocol> v;
    for (const auto& e : registry()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

const std::vector<ParamSpec>& protocol_parameters(Protocol p) { return info(p).params; }

// --- config -------------------------------------------------------------------

ScenarioConfig parse_config(const std::string& json_text, std::optional<Protocol> expected) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("$", "top level must be an object");

  static const std::set<std::string> known = {"protocol", "name", "grid", "params",
                                              "seed", "shots", "output", "threads"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError(key, "unknown field");
  }

  ScenarioConfig cfg;
  if (j.contains("protocol")) {
    if (!j["protocol"].is_string()) throw ConfigError("protocol", "expected a string");
    cfg.protocol = parse_protocol(j["protocol"].get<std::string>());
    if (expected && *expected != cfg.protocol) {
      throw ConfigError("protocol", "config is for '" + to_string(cfg.protocol) +
                                        "' but subcommand is '" + to_string(*expected) + "'");
    }
  } else if (expected) {
    cfg.protocol = *expected;
  } else {
    throw ConfigError("protocol", "missing");
  }
  const auto& specs = protocol_parameters(cfg.protocol);
  const auto find_spec = [&specs](const std::string& name, const std::string& path) {
    for (const auto& s : specs) {
      if (s.name == name) return s;
    }
    throw ConfigError(path, "unknown parameter for this protocol");
  };

  cfg.name = to_string(cfg.protocol);
  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty()) {
      throw ConfigError("name", "expected a nonempty string");
    }
    cfg.name = j["name"].get<std::string>();
    if (cfg.name.find_first_of("/\\") != std::string::npos) {
      throw ConfigError("name", "must not contain path separators");
    }
  }

  if (!j.contains("grid")) throw ConfigError("grid", "missing");
  const json& grid = j["grid"];
  if (!grid.is_object()) throw ConfigError("grid", "expected an object of axes");
  if (grid.empty()) throw ConfigError("grid", "must contain at least one axis");
  for (const auto& [name, axis] : grid.items()) {
    const std::string path = "grid." + name;
    const ParamSpec spec = find_spec(name, path);
    Axis ax{name, {}};
    if (axis.is_array()) {
      if (axis.empty()) throw ConfigError(path, "value list is empty");
      for (std::size_t i = 0; i < axis.size(); ++i) {
        ax.values.push_back(number_at(axis[i], path + "[" + std::to_string(i) + "]"));
      }
    } else if (axis.is_object()) {
      for (const auto& [key, _] : axis.items()) {
        if (key != "start" && key != "stop" && key != "count") {
          throw ConfigError(path + "." + key, "unknown field");
        }
      }
      for (const char* key : {"start", "stop", "count"}) {
        if (!axis.contains(key)) throw ConfigError(path + "." + key, "missing");
      }
      const double start = number_at(axis["start"], path + ".start");
      const double stop = number_at(axis["stop"], path + ".stop");
      const json& count = axis["count"];
      if (!count.is_number_integer() || count.get<long long>() < 1) {
        throw ConfigError(path + ".count", "must be an integer >= 1");
      }
      ax.values = linspace(start, stop, count.get<long long>());
    } else {
      throw ConfigError(path, "expected a value list or {start, stop, count}");
    }
    for (std::size_t i = 0; i < ax.values.size(); ++i) {
      check_value(spec, ax.values[i], path + "[" + std::to_string(i) + "]");
    }
    cfg.grid.push_back(std::move(ax));
  }

  if (j.contains("params")) {
    const json& params = j["params"];
    if (!params.is_object()) throw ConfigError("params", "expected an object");
    for (const auto& [name, value] : params.items()) {
      const std::string path = "params." + name;
      const ParamSpec spec = find_spec(name, path);
      if (grid.contains(name)) throw ConfigError(path, "already set as a grid axis");
      const double x = number_at(value, path);
      check_value(spec, x, path);
      cfg.params[name] = x;
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected an unsigned integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("shots")) {
    const json& s = j["shots"];
    if (s.is_string() && s.get<std::string>() == "exact") {
      cfg.shots.reset();
    } else if (s.is_number_integer() && s.get<long long>() >= 1) {
      cfg.shots = s.get<long long>();
    } else {
      throw ConfigError("shots", "expected \"exact\" or an integer >= 1");
    }
  }
  if (j.contains("output")) {
    if (!j["output"].is_string()) throw ConfigError("output", "expected a string");
    cfg.output_dir = j["output"].get<std::string>();
  }
  if (j.contains("threads")) {
    if (!j["threads"].is_number_unsigned()) {
      throw ConfigError("threads", "expected an unsigned integer");
    }
    cfg.threads = j["threads"].get<unsigned>();
  }
  return cfg;
}

ScenarioConfig default_config(Protocol p) {
  ScenarioConfig cfg;
  cfg.protocol = p;
  cfg.name = to_string(p);
  switch (p) {
    case Protocol::kEcho:
      cfg.grid = {{"alpha", linspace(0.1, 1.5, 15)}};
      break;
    case Protocol::kParamp:
      cfg.grid = {{"r", {0.25, 0.5, 1.0}}};
      break;
    case Protocol::kSu11:
      cfg.grid = {{"r", {0.25, 0.5}}};
      break;
    case Protocol::kWva:
      cfg.grid = {{"alpha", {1.0 / 1900.0, 1.0 / 3800.0, 1.0 / 7600.0}}};
      break;
    case Protocol::kNaive:
    case Protocol::kHindsight:
    case Protocol::kAgnostic:
    case Protocol::kPositronium:
      cfg.grid = {{"alpha", linspace(0.1, 1.5, 15)}};
      break;
    case Protocol::kAgnosticDephasing:
      cfg.grid = {{"s", linspace(0.1, 1.0, 10)}};
      break;
    case Protocol::kIcoSeqVsSwitch:
      cfg.grid = {{"r", {0.05, 0.1, 0.2, 0.5, 0.9, 1.0}}};
      break;
    case Protocol::kIcoNoiseRobust:
      cfg.grid = {{"r", {0.0, 0.5, 0.9, 1.0}}};
      break;
  }
  return cfg;
}

std::string config_schema() {
  json protocols = json::array();
  for (const auto& e : registry()) protocols.push_back(e.name);

  json axis = {
      {"oneOf",
       json::array({{{"type", "array"}, {"items", {{"type", "number"}}}, {"minItems", 1}},
                    {{"type", "object"},
                     {"required", json::array({"start", "stop", "count"})},
                     {"additionalProperties", false},
                     {"properties",
                      {{"start", {{"type", "number"}}},
                       {"stop", {{"type", "number"}}},
                       {"count", {{"type", "integer"}, {"minimum", 1}}}}}}})}};

  json per_protocol = json::object();
  for (const auto& e : registry()) {
    json params = json::object();
    for (const auto& s : e.params) {
      params[s.name] = {{"type", s.integer ? "integer" : "number"},
                        {"default", s.fallback},
                        {"minimum", s.min},
                        {"maximum", s.max}};
    }
    per_protocol[e.name] = params;
  }

  json schema = {
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "revmet scenario"},
      {"type", "object"},
      {"required", json::array({"grid"})},
      {"additionalProperties", false},
      {"properties",
       {{"protocol", {{"enum", protocols}}},
        {"name", {{"type", "string"}, {"minLength", 1}}},
        {"grid",
         {{"type", "object"},
          {"minProperties", 1},
          {"description", "axes combined as a Cartesian product, first axis slowest"},
          {"additionalProperties", axis}}},
        {"params", {{"type", "object"}, {"additionalProperties", {{"type", "number"}}}}},
        {"seed", {{"type", "integer"}, {"minimum", 0}}},
        {"shots", {{"oneOf", json::array({{{"const", "exact"}},
                                          {{"type", "integer"}, {"minimum", 1}}})}}},
        {"output", {{"type", "string"}}},
        {"threads", {{"type", "integer"}, {"minimum", 0}}}}},
      {"x-protocol-parameters", per_protocol},
  };
  return schema.dump(2) + "\n";
}

// --- execution ------------------------------------------------------------------

PointRecord run_point(Protocol p, const Values& values, std::uint64_t seed) {
  PointRecord r;
  for (const auto& s : protocol_parameters(p)) {
    const auto it = values.find(s.name);
    r.inputs.emplace_back(s.name, it == values.end() ? s.fallback : it->second);
  }
  const Values v(r.inputs.begin(), r.inputs.end());
  switch (p) {
    case Protocol::kEcho: point_echo(v, seed, r); break;
    case Protocol::kParamp: point_paramp(v, r); break;
    case Protocol::kSu11: point_su11(v, r); break;
    case Protocol::kWva: point_wva(v, r); break;
    case Protocol::kNaive: point_naive(v, r); break;
    case Protocol::kHindsight:
    case Protocol::kAgnostic:
    case Protocol::kPositronium:
    case Protocol::kAgnosticDephasing: point_time_loop(p, v, r); break;
    case Protocol::kIcoSeqVsSwitch: point_ico_order(v, r); break;
    case Protocol::kIcoNoiseRobust: point_ico_noise(v, r); break;
  }
  if (r.distribution.size() > 0) {
    const double sum = r.distribution.sum();
    if (std::abs(sum - 1.0) > 1e-8 || r.distribution.minCoeff() < tol::kNegativeProbability) {
      r.invariants_ok = false;
      r.warnings.push_back("distribution is not normalized");
    }
  }
  return r;
}

bool ScenarioResult::all_ok() const {
  return std::all_of(records.begin(), records.end(),
                     [](const PointRecord& r) { return r.error.empty() && r.invariants_ok; });
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  if (config.grid.empty()) throw ConfigError("grid", "must contain at least one axis");
  std::size_t total = 1;
  for (const auto& ax : config.grid) {
    if (ax.values.empty()) throw ConfigError("grid." + ax.name, "value list is empty");
    total *= ax.values.size();
  }

  std::vector<Values> points(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Values v = config.params;
    std::size_t rem = idx;
    for (auto ax = config.grid.rbegin(); ax != config.grid.rend(); ++ax) {
      v[ax->name] = ax->values[rem % ax->values.size()];
      rem /= ax->values.size();
    }
    points[idx] = std::move(v);
  }

  ScenarioResult result{config, std::vector<PointRecord>(total)};
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < total; i = next++) {
      const std::uint64_t point_seed = config.seed + i;
      PointRecord rec;
      try {
        rec = run_point(config.protocol, points[i], point_seed);
      } catch (const std::exception& e) {
        rec = PointRecord{};
        for (const auto& s : protocol_parameters(config.protocol)) {
          const auto it = points[i].find(s.name);
          rec.inputs.emplace_back(s.name, it == points[i].end() ? s.fallback : it->second);
        }
        rec.error = e.what();
        rec.invariants_ok = false;
      }
      if (config.shots && rec.distribution.size() > 0) {
        std::seed_seq seq{config.seed, static_cast<std::uint64_t>(i), std::uint64_t{0x5eed}};
        Rng rng(seq);
        rec.counts = sample_counts(rec.distribution, *config.shots, rng);
      }
      result.records[i] = std::move(rec);
    }
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

// --- output ---------------------------------------------------------------------

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

void atomic_write(const std::string& path, const std::string& contents) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

OutputPaths write_outputs(const ScenarioResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string base = (std::filesystem::path(dir) / result.config.name).string();
  OutputPaths paths{base + ".csv", base + ".dist.csv", base + ".provenance.json"};

  std::vector<std::string> extra_keys;
  for (const auto& rec : result.records) {
    for (const auto& [k, _] : rec.extras) {
      if (std::find(extra_keys.begin(), extra_keys.end(), k) == extra_keys.end()) {
        extra_keys.push_back(k);
      }
    }
  }

  std::string csv = "index";
  for (const auto& s : protocol_parameters(result.config.protocol)) csv += "," + s.name;
  csv += ",fi,qfi,success_prob";
  for (const auto& k : extra_keys) csv += "," + k;
  csv += ",invariants_ok,warnings,error\n";
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const PointRecord& rec = result.records[i];
    std::string line = std::to_string(i);
    for (const auto& [_, x] : rec.inputs) line += "," + format_number(x);
    line += "," + opt_number(rec.fi) + "," + opt_number(rec.qfi) + "," +
            opt_number(rec.success_prob);
    for (const auto& k : extra_keys) {
      const auto it = std::find_if(rec.extras.begin(), rec.extras.end(),
                                   [&k](const auto& e) { return e.first == k; });
      line += "," + (it == rec.extras.end() ? std::string() : format_number(it->second));
    }
    line += std::string(",") + (rec.invariants_ok ? "true" : "false") + "," +
            csv_escape(join(rec.warnings, "; ")) + "," + csv_escape(rec.error);
    csv += line + "\n";
  }

  std::string dist = result.config.shots ? "index,outcome,label,probability,count\n"
                                         : "index,outcome,label,probability\n";
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const PointRecord& rec = result.records[i];
    for (Eigen::Index k = 0; k < rec.distribution.size(); ++k) {
      const auto uk = static_cast<std::size_t>(k);
      dist += fmt::format("{},{},{},{}", i, k,
                          uk < rec.labels.size() ? csv_escape(rec.labels[uk]) : "",
                          format_number(rec.distribution(k)));
      if (result.config.shots) dist += "," + (rec.counts ? std::to_string((*rec.counts)[uk]) : "");
      dist += "\n";
    }
  }

  json prov;
  prov["tool"] = "revmet";
  prov["version"] = kVersion;
  prov["protocol"] = to_string(result.config.protocol);
  prov["name"] = result.config.name;
  prov["seed"] = result.config.seed;
  prov["shots"] = result.config.shots ? json(*result.config.shots) : json("exact");
  json grid = json::object();
  for (const auto& ax : result.config.grid) {
    json vals = json::array();
    for (double x : ax.values) vals.push_back(number_json(x));
    grid[ax.name] = vals;
  }
  prov["grid"] = grid;
  json params = json::object();
  for (const auto& s : protocol_parameters(result.config.protocol)) {
    if (grid.contains(s.name)) continue;
    const auto it = result.config.params.find(s.name);
    params[s.name] = number_json(it == result.config.params.end() ? s.fallback : it->second);
  }
  prov["params"] = params;
  prov["modules"] = {{"quantum-core", kVersion}, {"fisher-info", kVersion},
                     {"echo-metrology", kVersion}, {"weak-value", kVersion},
                     {"time-loop", kVersion}, {"ico-switch", kVersion}, {"harness", kVersion}};
  prov["tolerances"] = {{"state_norm", tol::kNorm},
                        {"kraus_completeness", tol::kKrausCompleteness},
                        {"probability_sum", tol::kProbabilitySum},
                        {"zero_probability_skip", tol::kZeroProbability},
                        {"sld_cutoff", tol::kSldCutoff},
                        {"fock_tail", tol::kFockTail},
                        {"grid_norm", tol::kGridNorm},
                        {"fi_bound_slack", 1e-6}};
  std::size_t failed = 0;
  for (const auto& rec : result.records) failed += (rec.error.empty() && rec.invariants_ok) ? 0 : 1;
  prov["records"] = result.records.size();
  prov["failed_points"] = failed;
  prov["all_ok"] = result.all_ok();
  prov["files"] = {{"records", std::filesystem::path(paths.records_csv).filename().string()},
                   {"distributions",
                    std::filesystem::path(paths.distributions_csv).filename().string()}};

  atomic_write(paths.records_csv, csv);
  atomic_write(paths.distributions_csv, dist);
  atomic_write(paths.provenance_json, prov.dump(2) + "\n");
  return paths;
}

std::string render_table(const ScenarioResult& result) {
  std::string out = fmt::format("{} ({} points)\n", result.config.name, result.records.size());
  std::string header = fmt::format("{:>5}", "#");
  for (const auto& s : protocol_parameters(result.config.protocol)) {
    header += fmt::format(" {:>12}", s.name);
  }
  header += fmt::format(" {:>14} {:>14} {:>6}\n", "fi", "qfi", "status");
  out += header;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const PointRecord& rec = result.records[i];
    std::string line = fmt::format("{:>5}", i);
    for (const auto& [_, x] : rec.inputs) line += fmt::format(" {:>12.6g}", x);
    line += fmt::format(" {:>14} {:>14} {:>6}", rec.fi ? fmt::format("{:.8g}", *rec.fi) : "-",
                        rec.qfi ? fmt::format("{:.8g}", *rec.qfi) : "-",
                        !rec.error.empty() ? "error" : rec.invariants_ok ? "ok" : "FAIL");
    out += line + "\n";
    if (!rec.error.empty()) out += "      error: " + rec.error + "\n";
    for (const auto& w : rec.warnings) out += "      warning: " + w + "\n";
  }
  return out;
}

}  // namespace revmet

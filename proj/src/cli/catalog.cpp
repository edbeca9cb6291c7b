#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "avgsamp/cli.hpp"

namespace avgsamp::cli {

namespace {

constexpr double kPi = std::numbers::pi;

ParamSpec num(std::string name, double def, std::string desc) {
  return {std::move(name), ParamType::Number, def, std::move(desc)};
}
ParamSpec integer(std::string name, long def, std::string desc) {
  return {std::move(name), ParamType::Integer, def, std::move(desc)};
}
ParamSpec str(std::string name, std::string def, std::string desc) {
  return {std::move(name), ParamType::String, std::move(def), std::move(desc)};
}
ParamSpec ints(std::string name, std::vector<long> def, std::string desc) {
  return {std::move(name), ParamType::IntegerList, def, std::move(desc)};
}
ParamSpec nums(std::string name, std::vector<double> def, std::string desc) {
  return {std::move(name), ParamType::NumberList, def, std::move(desc)};
}

std::string_view type_name(ParamType t) {
  switch (t) {
    case ParamType::Number: return "number";
    case ParamType::Integer: return "integer";
    case ParamType::String: return "string";
    case ParamType::NumberList: return "number[]";
    case ParamType::IntegerList: return "integer[]";
  }
  return "?";
}

std::vector<CatalogEntry> build_catalog() {
  const ParamSpec profile = str("profile", "box", "averaging profile: box, triangle or raised_cosine");
  return {
      {"kernel-report",
       "Tabulate the dual kernel s~ of one generator, its Riesz bounds and C_p(t); check the decay inequality.",
       "|s~(t-n)| <= C_p(t)/|n|^p,  C_p(t) = (1/2pi) int_{-pi}^{pi} |(theta(xi) e^{-it xi} / u^(xi))^{(p)}| dxi",
       {profile, num("a", 0.15, "left radius of the generator"), num("b", 0.15, "right radius of the generator"),
        num("window_omega", 2.0, "inner edge omega of the guard-band window, in (0, pi); 0 disables the window"),
        integer("p", 3, "window smoothness p >= 2"), num("half_range", 40.0, "table covers [-half_range, half_range]"),
        nums("decay_t", {0.0, 0.25, 0.5, 0.7}, "t values for C_p(t) and the decay check")}},
      {"nyquist-recon",
       "Reconstruct random sinc series from shift-invariant averages and compare with the truth.",
       "f(t) = sum_n <f, u(. - n)> s~(t - n) for f in PW_omega, when sqrt(max(a,b) (a+b)) < 1/pi",
       {profile, num("width", 0.3, "symmetric kernel width a + b"),
        num("bandwidth", 0.8, "functions are sums of sinc(bandwidth t - k), band [-bandwidth pi, bandwidth pi]"),
        integer("functions", 10, "number of random test functions"),
        integer("terms", 8, "sinc terms per function"), integer("index_span", 6, "term indices in [-span, span]"),
        num("window_omega", 0.8 * kPi, "inner edge omega of the guard-band window"),
        integer("p", 3, "window smoothness"), integer("N", 60, "truncation |n| <= N"),
        integer("t_count", 50, "uniform t values in [t_lo, t_hi]"), num("t_lo", -5.0, "first t"),
        num("t_hi", 5.0, "last t"), num("max_error", 1e-4, "assert every error below this")}},
      {"oversampled-recon",
       "Iterative reconstruction of random sinc series from averages at dense centers.",
       "t_{n+1} - t_n <= delta, supp u_n in [t_n - delta/2, t_n + delta/2], delta < 1/(sqrt(2) pi omega)",
       {profile, num("omega", 1.0, "band [-pi omega, pi omega]"), num("gap", 0.2, "distance between centers"),
        num("width", 0.1, "symmetric kernel width"), num("lo", -15.0, "first center"),
        num("hi", 15.0, "last center"), integer("functions", 3, "number of random test functions"),
        integer("terms", 5, "sinc terms per function"), integer("index_span", 5, "term indices in [-span, span]"),
        num("tol", 1e-10, "stop when successive iterates differ by less (trusted-grid L2)"),
        integer("max_iter", 200, "iteration cap"), num("recovery_tol", 1e-8, "assert coefficient error below this")}},
      {"truncation-bound",
       "Monte Carlo mean-square truncation error of the windowed expansion against the bound.",
       "E|X(t) - X_N(t)|^2 <= 4 R_X(0) C_p(t)^2 / ((p-1)^2 N^{2(p-1)})",
       {profile, num("width", 0.3, "symmetric kernel width"),
        num("band_edge", 0.8 * kPi, "flat spectral model on [-band_edge, band_edge]"),
        num("power", 1.0, "R_X(0)"), integer("atoms", 4096, "number of spectral atoms (even)"),
        num("window_omega", 0.8 * kPi, "inner edge omega of the guard-band window"),
        integer("p", 2, "window smoothness"), num("t", 0.37, "reconstruction point"),
        ints("N", {4, 8, 16, 32}, "truncation sweep"), integer("trials", 2000, "Monte Carlo trials (>= 100)")}},
      {"aliasing",
       "Monte Carlo error of the projected expansion for a process exceeding the band.",
       "E|X(t) - P~X(t)|^2 = int_{|lambda| > pi} F(d lambda)",
       {profile, num("width", 0.3, "symmetric kernel width"),
        num("band_edge", 2.0 * kPi, "flat spectral model on [-band_edge, band_edge]"),
        num("power", 1.0, "R_X(0)"), integer("atoms", 4096, "number of spectral atoms (even)"),
        num("t", 0.37, "reconstruction point"), integer("N", 200, "truncation |n| <= N"),
        integer("trials", 2000, "Monte Carlo trials (>= 100)")}},
      {"zak-check",
       "Zak transform facts for sinc and its derivative.",
       "|Z_phi(0, xi)| = 1 and sup |Z_phi'(t, xi)| = pi for phi = sinc",
       {integer("M", 10000, "truncation |n| <= M"), integer("t_points", 64, "t grid on [0, 1)"),
        integer("xi_points", 256, "xi grid on [-pi, pi] including both ends"),
        integer("unit_points", 1024, "xi grid for |Z_sinc(0, xi)|"),
        num("unit_tol", 1e-12, "allowed deviation of |Z_sinc(0, xi)| from 1"),
        num("sup_rel_tol", 0.02, "allowed relative deviation of the sup from pi")}},
  };
}

double parse_number(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    // "<x>pi" or "pi"
    std::string s = v.get<std::string>();
    double factor = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
      factor = kPi;
      s.resize(s.size() - 2);
      if (s.empty()) return kPi;
      if (s.back() == '*') s.pop_back();
    }
    try {
      std::size_t used = 0;
      const double x = std::stod(s, &used);
      if (used == s.size()) return x * factor;
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError(fmt::format("parameter '{}' must be a number (got {})", key, v.dump()));
}

long parse_integer(const json& v, const std::string& key) {
  double x = 0.0;
  try {
    x = parse_number(v, key);
  } catch (const UsageError&) {
    throw UsageError(fmt::format("parameter '{}' must be an integer (got {})", key, v.dump()));
  }
  if (x != std::floor(x) || std::abs(x) > 1e15)
    throw UsageError(fmt::format("parameter '{}' must be an integer (got {})", key, v.dump()));
  return static_cast<long>(x);
}

json normalize(const ParamSpec& spec, const json& v) {
  switch (spec.type) {
    case ParamType::Number: return parse_number(v, spec.name);
    case ParamType::Integer: return parse_integer(v, spec.name);
    case ParamType::String:
      if (!v.is_string()) throw UsageError(fmt::format("parameter '{}' must be a string", spec.name));
      return v;
    case ParamType::NumberList:
    case ParamType::IntegerList: {
      const json arr = v.is_array() ? v : json::array({v});
      json out = json::array();
      for (const auto& x : arr)
        out.push_back(spec.type == ParamType::NumberList ? json(parse_number(x, spec.name))
                                                         : json(parse_integer(x, spec.name)));
      return out;
    }
  }
  return v;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_kind(std::string_view kind) {
  for (const auto& e : catalog())
    if (e.kind == kind) return &e;
  return nullptr;
}

std::string catalog_text() {
  std::string out;
  for (const auto& e : catalog()) {
    out += fmt::format("{}\n  {}\n  checks: {}\n", e.kind, e.summary, e.claim);
    for (const auto& p : e.params)
      out += fmt::format("    {:<14} {:<10} default {:<22} {}\n", p.name, type_name(p.type), p.default_value.dump(),
                         p.description);
  }
  return out;
}

json catalog_json() {
  json out = json::array();
  for (const auto& e : catalog()) {
    json props = json::object();
    for (const auto& p : e.params)
      props[p.name] = {{"type", type_name(p.type)}, {"default", p.default_value}, {"description", p.description}};
    out.push_back({{"kind", e.kind}, {"summary", e.summary}, {"claim", e.claim}, {"params", props}});
  }
  return {{"version", kVersion}, {"experiments", out}};
}

json resolve_params(const CatalogEntry& entry, const json& given) {
  if (!given.is_null() && !given.is_object()) throw UsageError("\"params\" must be a JSON object");
  json out = json::object();
  for (const auto& p : entry.params) out[p.name] = p.default_value;
  if (given.is_object()) {
    for (const auto& [key, v] : given.items()) {
      const auto it = std::find_if(entry.params.begin(), entry.params.end(),
                                   [&](const ParamSpec& p) { return p.name == key; });
      if (it == entry.params.end()) {
        std::string valid;
        for (const auto& p : entry.params) valid += (valid.empty() ? "" : ", ") + p.name;
        throw UsageError(fmt::format("unknown parameter '{}' for {} (valid: {})", key, entry.kind, valid));
      }
      out[key] = normalize(*it, v);
    }
  }
  return out;
}

std::pair<std::string, json> parse_param_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value (got '" + text + "')");
  const std::string key = text.substr(0, eq);
  const std::string raw = text.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  return {key, value};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "kind") {
      if (!v.is_string()) throw UsageError("config \"kind\" must be a string");
      c.kind = v.get<std::string>();
    } else if (key == "seed") {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        throw UsageError("config \"seed\" must be a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "threads") {
      if (!v.is_number_integer() || v.get<long long>() < 1) throw UsageError("config \"threads\" must be >= 1");
      c.threads = v.get<int>();
    } else if (key == "params") {
      if (!v.is_object()) throw UsageError("config \"params\" must be an object");
      c.params = v;
    } else {
      throw UsageError("unknown config field '" + key + "' (valid: kind, seed, threads, params)");
    }
  }
  return c;
}

}  // namespace avgsamp::cli

#include "avgsamp/io.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "avgsamp/errors.hpp"

namespace avgsamp::io {

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
  if (!j.at(key).is_number()) throw InvalidArgument(std::string("field \"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

json to_json(const AverageKernel& k) {
  return {{"profile", std::string(to_string(k.profile()))},
          {"center", k.center()},
          {"a", k.left_radius()},
          {"b", k.right_radius()}};
}

AverageKernel kernel_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("kernel must be a JSON object");
  const Profile p = profile_from_string(j.value("profile", std::string("box")));
  const double center = j.contains("center") ? number(j, "center") : 0.0;
  if (j.contains("width")) return AverageKernel::symmetric(p, center, number(j, "width"));
  return AverageKernel(p, center, number(j, "a"), number(j, "b"));
}

json to_json(const SpectralMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({a.frequency, a.mass});
  return {{"band_edge", m.band_edge()}, {"atoms", atoms}};
}

SpectralMeasure measure_from_json(const json& j) {
  std::vector<SpectralAtom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2) throw InvalidArgument("each atom must be [frequency, mass]");
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return SpectralMeasure(std::move(atoms), number(j, "band_edge"));
}

json to_json(const PWFunction& f) {
  json c = json::object();
  for (const auto& [n, v] : f.coefficients()) c[std::to_string(n)] = v;
  return {{"omega", f.omega()}, {"coefficients", c}};
}

PWFunction pw_from_json(const json& j) {
  std::map<int, double> c;
  if (j.contains("coefficients"))
    for (const auto& [key, v] : j.at("coefficients").items()) c.emplace(std::stoi(key), v.get<double>());
  return PWFunction(number(j, "omega"), std::move(c));
}

json to_json(const GuardBandWindow& w) { return {{"omega", w.omega}, {"p", w.p}}; }

GuardBandWindow window_from_json(const json& j) {
  return GuardBandWindow(number(j, "omega"), static_cast<int>(number(j, "p")));
}

json to_json(const SamplingScheme& s) {
  json out{{"centers", s.centers()}};
  if (s.size() > 0) {
    json k = to_json(s.kernels().front());
    k.erase("center");
    out["kernel"] = k;
  }
  out["regime"] = s.regime() == Regime::Oversampled ? "oversampled" : "nyquist";
  return out;
}

SamplingScheme scheme_from_json(const json& j) {
  const auto centers = j.at("centers").get<std::vector<double>>();
  json k = j.at("kernel");
  k["center"] = 0.0;
  const std::string regime = j.value("regime", std::string("oversampled"));
  if (regime != "oversampled" && regime != "nyquist")
    throw InvalidArgument("regime must be \"oversampled\" or \"nyquist\"");
  return SamplingScheme::translates(kernel_from_json(k), centers,
                                    regime == "oversampled" ? Regime::Oversampled : Regime::NyquistShiftInvariant);
}

std::string averages_csv(const std::map<int, double>& averages) {
  std::string out = "n,value\n";
  for (const auto& [n, v] : averages) out += fmt::format("{},{}\n", n, format_number(v));
  return out;
}

std::map<int, double> averages_from_csv(const std::string& text) {
  std::map<int, double> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("n,", 0) == 0) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidArgument("averages CSV rows must be \"n,value\"");
    try {
      out[std::stoi(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw InvalidArgument("cannot parse averages CSV row \"" + line + "\"");
    }
  }
  return out;
}

std::string path_csv(const SamplePath& path) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < path.times.size(); ++i)
    out += fmt::format("{},{}\n", format_number(path.times[i]), format_number(path.values[i]));
  return out;
}

json to_json(const ErrorReport& r) {
  json j{{"experiment", r.experiment},
         {"N", r.N},
         {"trials", r.trials},
         {"mse", r.mse},
         {"stderr", r.stderr_},
         {"bound", std::isfinite(r.bound) ? json(r.bound) : json(nullptr)},
         {"satisfied", r.satisfied},
         {"slope", r.slope ? json(*r.slope) : json(nullptr)},
         {"exact", r.exact},
         {"bias", r.bias},
         {"bias_stderr", r.bias_stderr}};
  if (r.experiment == "aliasing") j["allowance"] = r.allowance;
  return j;
}

std::string error_reports_csv(const std::vector<ErrorReport>& rows, bool with_allowance) {
  std::string out = "experiment,N,mse,stderr,bound,satisfied,slope";
  out += with_allowance ? ",allowance\n" : "\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}", r.experiment, r.N, format_number(r.mse), format_number(r.stderr_),
                       format_number(r.bound), r.satisfied ? "true" : "false",
                       r.slope ? format_number(*r.slope) : std::string());
    out += with_allowance ? fmt::format(",{}\n", format_number(r.allowance)) : "\n";
  }
  return out;
}

std::string kernel_csv(const ReconstructionKernel& k) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < k.nodes().size(); ++i)
    out += fmt::format("{},{}\n", format_number(k.nodes()[i]), format_number(k.values()[i]));
  return out;
}

json kernel_header(const ReconstructionKernel& k, const std::vector<double>& decay_ts) {
  json j{{"profile", to_json(k.generator())},
         {"window", k.window() ? to_json(*k.window()) : json(nullptr)},
         {"A", k.frame_bounds().lower},
         {"B", k.frame_bounds().upper},
         {"table", {{"half_range", k.half_range()}, {"step", k.step()}}}};
  json table = json::array();
  if (k.window())
    for (double t : decay_ts) table.push_back({{"t", t}, {"C_p", decay_constant(k.generator(), *k.window(), t).C}});
  j["C_p"] = table;
  return j;
}

}  // namespace avgsamp::io

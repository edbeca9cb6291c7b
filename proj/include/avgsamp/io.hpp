#pragma once

// JSON and CSV forms of the library's value types. Numbers are written in
// shortest round-trip form so identical inputs give byte-identical files.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "avgsamp/kernels.hpp"
#include "avgsamp/pw_core.hpp"
#include "avgsamp/recon_nyquist.hpp"
#include "avgsamp/spectral.hpp"
#include "avgsamp/stochastic.hpp"

namespace avgsamp::io {

using nlohmann::json;

// Shortest decimal that round-trips; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

json to_json(const AverageKernel& k);
// {"profile": "box", "center": c, "a": a, "b": b} or {"profile", "center", "width"}.
AverageKernel kernel_from_json(const json& j);

json to_json(const SpectralMeasure& m);
// {"band_edge": e, "atoms": [[λ, m], ...]}
SpectralMeasure measure_from_json(const json& j);

json to_json(const PWFunction& f);
// {"omega": ω, "coefficients": {"n": c, ...}}
PWFunction pw_from_json(const json& j);

json to_json(const GuardBandWindow& w);
GuardBandWindow window_from_json(const json& j);

// {"centers": [...], "kernel": {...}}: kernels of one shape at each center.
json to_json(const SamplingScheme& s);
SamplingScheme scheme_from_json(const json& j);

// Rows "n,value" with a header line.
std::string averages_csv(const std::map<int, double>& averages);
std::map<int, double> averages_from_csv(const std::string& text);

// Rows "t,value" with a header line.
std::string path_csv(const SamplePath& path);

json to_json(const ErrorReport& r);
// Columns experiment,N,mse,stderr,bound,satisfied,slope (+ allowance when
// `with_allowance`).
std::string error_reports_csv(const std::vector<ErrorReport>& rows, bool with_allowance = false);

// Kernel export: CSV of (t, s̃(t)) node pairs and a JSON header with the
// profile, window, frame bounds and C_p(t) on the given t values.
std::string kernel_csv(const ReconstructionKernel& k);
json kernel_header(const ReconstructionKernel& k, const std::vector<double>& decay_ts);

}  // namespace avgsamp::io

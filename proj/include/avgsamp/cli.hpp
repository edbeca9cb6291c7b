#pragma once

// Experiment catalog, parameter validation and the experiment runners behind
// the avgsamp command line tool. Runners are pure: they return file contents
// and leave writing to the caller.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace avgsamp::cli {

using nlohmann::json;

inline constexpr std::string_view kVersion = "avgsamp 0.1.0";

// Bad flags, unknown parameters, values out of range. Exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamType { Number, Integer, String, NumberList, IntegerList };

struct ParamSpec {
  std::string name;
  ParamType type;
  json default_value;
  std::string description;
};

struct CatalogEntry {
  std::string kind;
  std::string summary;
  std::string claim;  // the formula or statement the experiment checks
  std::vector<ParamSpec> params;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_kind(std::string_view kind);
std::string catalog_text();
json catalog_json();

// Defaults merged with `given`; rejects unknown keys and wrong types. Number
// fields also accept strings such as "0.8pi".
json resolve_params(const CatalogEntry& entry, const json& given);

// "key=value": value parsed as JSON when possible, else kept as a string.
std::pair<std::string, json> parse_param_override(const std::string& text);

struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  int threads = 1;
  json params = json::object();
};

// Reads {"kind", "seed", "threads", "params"}; missing fields keep defaults.
ExperimentConfig config_from_json(const json& j);

struct RunResult {
  bool passed = true;                 // every assertion held
  std::string csv;
  json report;                        // includes version and config echo
  std::vector<std::string> summary;   // one line per sub-result
};

// Validates every parameter first (UsageError, or the library's
// InvalidArgument), then computes.
RunResult run_experiment(const ExperimentConfig& config);

// Exit status for a finished run: 0 when every assertion held, 2 otherwise.
inline int exit_status(const RunResult& r) { return r.passed ? 0 : 2; }

}  // namespace avgsamp::cli

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace hecke {

inline constexpr const char* kArtifactName = "heckelab";
inline constexpr const char* kArtifactVersion = "1.0.0";

/// Subcommand plus every knob as text, with where each value came from.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> sources;  // "default", "file" or "flag"

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  bool flag(const std::string& key) const;
};

/// Names of the subcommands in a fixed order.
const std::vector<std::string>& subcommands();

/// Knobs accepted by a subcommand (flag spelling without the dashes).
const std::set<std::string>& knobs(const std::string& subcommand);

/// Knobs that are on/off switches rather than values.
bool is_switch(const std::string& knob);

/// One-line help per knob.
std::string knob_help(const std::string& knob);

/// key = value lines; '#' starts a comment. Unknown keys are an error.
std::map<std::string, std::string> read_config_file(const std::string& path, const std::string& subcommand);

/// Merges defaults, then the config file, then flags.
RunConfig make_config(const std::string& subcommand, const std::map<std::string, std::string>& flags,
                      const std::string& config_path = "");

/// Checks every knob against the owning module before any computation. Throws DomainError.
void validate(const RunConfig& cfg);

/// A side file produced by a run; written by the caller.
struct SideFile {
  std::string path;
  std::string body;
};

struct RunOutput {
  nlohmann::json envelope;
  std::vector<SideFile> files;
  int exit_code = 0;
};

/// Dispatches to one pipeline. cfg must have passed validate(). Errors raised during the
/// computation end up in the envelope's errors section with exit code 1.
RunOutput run(const RunConfig& cfg);

/// Envelope with the timestamps removed, for comparisons.
nlohmann::json strip_timestamps(nlohmann::json envelope);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_json(const nlohmann::json& j);

}  // namespace hecke

#ifndef ADISK_EXPERIMENT_HPP
#define ADISK_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adisk {

inline constexpr const char* kVersion = "adisk 0.1.0";

/// Flag overrides applied on top of the config file fields.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_n;
  std::optional<int> threads;
  std::optional<std::string> output_dir;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 module error, 2 config/usage error
  std::string message;
  std::vector<std::string> artifacts;  // paths written, manifest last
};

/// Invalid configs - unknown fields, bad values - are reported with a field
/// diagnostic and exit code 2; module errors surface with exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Runs one experiment described by a JSON config (commands: measure, glue,
/// envelope, hull, leaf, report). Outputs are deterministic for a fixed
/// config and seed; a manifest listing every artifact with the config hash
/// is written last.
RunResult run_experiment(const std::string& config_json, const CliOverrides& ov = {});

/// FNV-1a 64-bit hash used for config and artifact identity.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace adisk

#endif  // ADISK_EXPERIMENT_HPP

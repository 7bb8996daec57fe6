#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppls/runner.hpp"

namespace ppls {

/// Everything `ppls run` needs. Serialized as "key = value" lines; '#' starts
/// a comment. Unknown or repeated keys are rejected.
///
///   instance    = <file.mubqp> | <a.tsp>, <b.tsp>[, ...]
///   algorithm   = pls | pls-abi | pplsd | p-pls-abi
///   H           = <int>            (pplsd)
///   L           = <int>            (p-pls-abi)
///   seed        = <uint64>
///   reps        = <int>
///   max_evals   = <uint64>         (per worker)
///   max_seconds = <real>           (per worker)
///   init        = random | seeded:<archive file>
///   out         = <directory>
///   threads     = <int>            (0 = all hardware threads)
struct ExperimentConfig {
  std::vector<std::string> instance;
  Algorithm algorithm = Algorithm::pplsd;
  int H = 6;
  int L = 0;
  std::uint64_t seed = 1;
  int reps = 1;
  std::optional<std::uint64_t> max_evals;
  std::optional<double> max_seconds;
  std::string init = "random";
  std::string out = "runs";
  int threads = 0;

  void validate() const;
  StoppingCriterion stopping() const;
  /// Short name used for output files, e.g. "pplsd-H6" or "p-pls-abi-L7".
  std::string label() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<stream>");
ExperimentConfig load_config(const std::filesystem::path& path);
std::string to_text(const ExperimentConfig& c);

/// Splits "a, b ,c" into {"a", "b", "c"}.
std::vector<std::string> split_list(const std::string& s);

}  // namespace ppls

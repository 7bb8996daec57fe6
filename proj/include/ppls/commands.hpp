#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "ppls/config.hpp"
#include "ppls/mtsp.hpp"
#include "ppls/mubqp.hpp"

namespace ppls {

using AnyInstance = std::variant<MubqpInstance, MtspInstance>;

/// One path -> mUBQP instance file; several .tsp paths -> combined mTSP.
AnyInstance load_instance(const std::vector<std::string>& paths);

struct GenMubqpOptions {
  int n = 200;
  int m = 2;
  double density = 0.8;
  double correlation = 0.0;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

struct MetricsOptions {
  std::filesystem::path history_dir;
  std::vector<std::uint64_t> checkpoints;  // empty = automatic
  std::uint64_t window = 0;                // 0 = automatic
  std::filesystem::path out;
};

struct SeedOptions {
  std::vector<std::string> instance;
  int H = 6;
  std::uint64_t seed = 1;
  std::filesystem::path out;
};

// Each command writes a short summary to `log` and returns a process exit code;
// failures propagate as exceptions.
int cmd_gen_mubqp(const GenMubqpOptions& opt, std::ostream& log);
int cmd_run(const ExperimentConfig& config, std::ostream& log);
int cmd_metrics(const MetricsOptions& opt, std::ostream& log);
int cmd_seed(const SeedOptions& opt, std::ostream& log);

/// Command-line front end shared by the `ppls` binary and tests.
int cli_main(int argc, const char* const* argv);

}  // namespace ppls

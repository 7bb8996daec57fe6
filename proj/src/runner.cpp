#include "ppls/runner.hpp"

#include <mutex>

namespace ppls {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::pls: return "pls";
    case Algorithm::pls_abi: return "pls-abi";
    case Algorithm::pplsd: return "pplsd";
    case Algorithm::p_pls_abi: return "p-pls-abi";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "pls") return Algorithm::pls;
  if (s == "pls-abi") return Algorithm::pls_abi;
  if (s == "pplsd") return Algorithm::pplsd;
  if (s == "p-pls-abi") return Algorithm::p_pls_abi;
  throw ParameterError("unknown algorithm '" + s + "' (expected pls, pls-abi, pplsd or p-pls-abi)");
}

void fork_join(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int pool = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::clamp(pool, 1, count);

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto drain = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };

  if (pool == 1) {
    drain();
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(pool));
    for (int t = 0; t < pool; ++t) workers.emplace_back(drain);
  }

  for (int i = 0; i < count; ++i) {
    if (!errors[static_cast<std::size_t>(i)]) continue;
    try {
      std::rethrow_exception(errors[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      throw WorkerFailure(i, e.what());
    } catch (...) {
      throw WorkerFailure(i, "unknown exception");
    }
  }
}

}  // namespace ppls

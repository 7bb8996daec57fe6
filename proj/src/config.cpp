#include "ppls/config.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace ppls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_value(const std::string& text) {
  std::istringstream ss(text);
  T v{};
  if (!(ss >> v) || !(ss >> std::ws).eof()) throw std::invalid_argument("invalid value '" + text + "'");
  return v;
}

}  // namespace

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (instance.empty()) throw ParameterError("config: 'instance' is required");
  if (reps < 1) throw ParameterError("config: reps must be >= 1");
  if (algorithm == Algorithm::pplsd && H < 1) throw ParameterError("config: pplsd requires H >= 1");
  if (algorithm == Algorithm::p_pls_abi && L < 1) throw ParameterError("config: p-pls-abi requires L >= 1");
  if (max_seconds && !(*max_seconds > 0.0)) throw ParameterError("config: max_seconds must be positive");
  if (init != "random" && init.rfind("seeded:", 0) != 0) {
    throw ParameterError("config: init must be 'random' or 'seeded:<file>'");
  }
  if (init.rfind("seeded:", 0) == 0 && init.size() == 7) throw ParameterError("config: seeded init needs a file");
  if (threads < 0) throw ParameterError("config: threads must be >= 0");
}

StoppingCriterion ExperimentConfig::stopping() const {
  StoppingCriterion s;
  s.max_evaluations = max_evals;
  if (max_seconds) s.max_wall_time = std::chrono::duration<double>(*max_seconds);
  s.natural_termination = true;
  return s;
}

std::string ExperimentConfig::label() const {
  switch (algorithm) {
    case Algorithm::pplsd: return "pplsd-H" + std::to_string(H);
    case Algorithm::p_pls_abi: return "p-pls-abi-L" + std::to_string(L);
    default: return to_string(algorithm);
  }
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError(source, lineno, "duplicate key '" + key + "'");
    try {
      if (key == "instance") c.instance = split_list(value);
      else if (key == "algorithm") c.algorithm = algorithm_from_string(value);
      else if (key == "H") c.H = parse_value<int>(value);
      else if (key == "L") c.L = parse_value<int>(value);
      else if (key == "seed") c.seed = parse_value<std::uint64_t>(value);
      else if (key == "reps") c.reps = parse_value<int>(value);
      else if (key == "max_evals") c.max_evals = parse_value<std::uint64_t>(value);
      else if (key == "max_seconds") c.max_seconds = parse_value<double>(value);
      else if (key == "init") c.init = value;
      else if (key == "out") c.out = value;
      else if (key == "threads") c.threads = parse_value<int>(value);
      else throw ParseError(source, lineno, "unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, lineno, key + ": " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_config(in, path.string());
}

std::string to_text(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "instance = ";
  for (std::size_t i = 0; i < c.instance.size(); ++i) out << (i ? ", " : "") << c.instance[i];
  out << "\nalgorithm = " << to_string(c.algorithm) << "\n";
  out << "H = " << c.H << "\n";
  out << "L = " << c.L << "\n";
  out << "seed = " << c.seed << "\n";
  out << "reps = " << c.reps << "\n";
  if (c.max_evals) out << "max_evals = " << *c.max_evals << "\n";
  if (c.max_seconds) out << "max_seconds = " << format_number(*c.max_seconds) << "\n";
  out << "init = " << c.init << "\n";
  out << "out = " << c.out << "\n";
  out << "threads = " << c.threads << "\n";
  return out.str();
}

}  // namespace ppls

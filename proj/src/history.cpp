#include "ppls/history.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace ppls {

using nlohmann::json;

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::init: return "init";
    case EventKind::accepted: return "accepted";
    case EventKind::explored: return "explored";
    case EventKind::removed: return "removed";
  }
  return "?";
}

EventKind event_kind_from_string(const std::string& s) {
  if (s == "init") return EventKind::init;
  if (s == "accepted") return EventKind::accepted;
  if (s == "explored") return EventKind::explored;
  if (s == "removed") return EventKind::removed;
  throw std::invalid_argument("unknown event kind '" + s + "'");
}

std::string to_json_line(const HistoryEvent& e) {
  // ordered_json keeps the field order stable for byte-identical output.
  nlohmann::ordered_json j;
  j["kind"] = to_string(e.kind);
  j["id"] = e.id;
  j["parent"] = e.parent ? nlohmann::ordered_json(*e.parent) : nlohmann::ordered_json(nullptr);
  j["worker"] = e.worker;
  j["evals"] = e.evals;
  j["objectives"] = std::vector<double>(e.objectives.begin(), e.objectives.end());
  return j.dump();
}

HistoryEvent parse_json_line(const std::string& line, const std::string& source, std::size_t lineno) {
  try {
    const json j = json::parse(line);
    if (!j.is_object() || j.size() != 6) throw ParseError(source, lineno, "expected an object with 6 fields");
    HistoryEvent e;
    e.kind = event_kind_from_string(j.at("kind").get<std::string>());
    e.id = j.at("id").get<HistoryId>();
    if (!j.at("parent").is_null()) e.parent = j.at("parent").get<HistoryId>();
    e.worker = j.at("worker").get<int>();
    e.evals = j.at("evals").get<std::uint64_t>();
    const auto values = j.at("objectives").get<std::vector<double>>();
    e.objectives = Eigen::Map<const ObjectiveVector>(values.data(), static_cast<Eigen::Index>(values.size()));
    return e;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ParseError(source, lineno, ex.what());
  }
}

void write_history(std::ostream& out, const std::vector<HistoryEvent>& events) {
  for (const auto& e : events) out << to_json_line(e) << '\n';
}

std::vector<HistoryEvent> read_history(std::istream& in, const std::string& source) {
  std::vector<HistoryEvent> events;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    events.push_back(parse_json_line(line, source, lineno));
  }
  return events;
}

std::vector<HistoryEvent> read_history(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_history(in, path.string());
}

}  // namespace ppls

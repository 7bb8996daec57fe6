#include "ppls/archive_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

namespace ppls {

using ojson = nlohmann::ordered_json;

namespace {

ojson encode(const BitString& x) {
  std::string s(static_cast<std::size_t>(x.size()), '0');
  for (Eigen::Index i = 0; i < x.size(); ++i) s[static_cast<std::size_t>(i)] = x[i] ? '1' : '0';
  return s;
}

ojson encode(const Tour& t) { return t; }

void decode(const ojson& j, BitString& x) {
  const auto s = j.get<std::string>();
  x.resize(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bit string contains '" + std::string(1, s[i]) + "'");
    x[static_cast<Eigen::Index>(i)] = s[i] == '1' ? 1 : 0;
  }
}

void decode(const ojson& j, Tour& t) { t = j.get<Tour>(); }

template <typename Instance, typename G>
void write_impl(std::ostream& out, const Instance& inst, const std::vector<Solution<G>>& sols) {
  ojson doc;
  doc["problem"] = inst.kind();
  doc["objectives"] = inst.objectives();
  ojson arr = ojson::array();
  for (const auto& s : sols) {
    const ObjectiveVector native = to_reported(s.objectives, inst.orientation());
    ojson e;
    e["objectives"] = std::vector<double>(native.begin(), native.end());
    e["genotype"] = encode(s.genotype);
    arr.push_back(std::move(e));
  }
  doc["solutions"] = std::move(arr);
  out << doc.dump(1) << '\n';
}

template <typename Instance, typename G>
std::vector<Solution<G>> read_impl(std::istream& in, const Instance& inst, const std::string& source) {
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  std::vector<Solution<G>> out;
  try {
    if (doc.at("problem").get<std::string>() != inst.kind()) {
      throw ParseError(source + ": archive is for problem '" + doc.at("problem").get<std::string>() + "', instance is '" +
                       inst.kind() + "'");
    }
    if (doc.at("objectives").get<int>() != inst.objectives()) throw ParseError(source + ": objective count mismatch");
    std::size_t idx = 0;
    for (const auto& e : doc.at("solutions")) {
      Solution<G> s;
      decode(e.at("genotype"), s.genotype);
      s.objectives = inst.evaluate(s.genotype);
      const auto recorded = e.at("objectives").get<std::vector<double>>();
      const ObjectiveVector native = to_reported(s.objectives, inst.orientation());
      if (recorded.size() != static_cast<std::size_t>(native.size()) ||
          !native.isApprox(Eigen::Map<const ObjectiveVector>(recorded.data(), native.size()), 1e-9)) {
        throw ParseError(source + ": solution " + std::to_string(idx) + " objectives do not match its genotype");
      }
      out.push_back(std::move(s));
      ++idx;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  return out;
}

}  // namespace

void write_archive(std::ostream& out, const MubqpInstance& inst, const std::vector<Solution<BitString>>& sols) {
  write_impl(out, inst, sols);
}
void write_archive(std::ostream& out, const MtspInstance& inst, const std::vector<Solution<Tour>>& sols) {
  write_impl(out, inst, sols);
}
std::vector<Solution<BitString>> read_archive(std::istream& in, const MubqpInstance& inst, const std::string& source) {
  return read_impl<MubqpInstance, BitString>(in, inst, source);
}
std::vector<Solution<Tour>> read_archive(std::istream& in, const MtspInstance& inst, const std::string& source) {
  return read_impl<MtspInstance, Tour>(in, inst, source);
}

}  // namespace ppls

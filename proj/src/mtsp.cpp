#include "ppls/mtsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

namespace ppls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Moves (first, last) with 1 <= first < last <= n-1, minus (1, n-1) whose
// complement is the single city 0. City 0 never moves, so every 2-edge
// exchange appears exactly once.
std::vector<TwoOptMove> enumerate_moves(int n) {
  std::vector<TwoOptMove> moves;
  if (n < 4) return moves;
  moves.reserve(static_cast<std::size_t>(n) * (n - 3) / 2);
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (i == 1 && j == n - 1) continue;
      moves.push_back({i, j});
    }
  }
  return moves;
}

}  // namespace

TsplibMatrix parse_tsplib(std::istream& in, const std::string& source) {
  TsplibMatrix out;
  std::optional<long long> dimension;
  std::string edge_type;
  std::string line;
  std::size_t lineno = 0;
  bool in_coords = false;
  std::vector<std::pair<double, double>> coords;
  std::vector<bool> seen;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;

    if (in_coords) {
      std::istringstream ss(t);
      long long id;
      double x, y;
      if (!(ss >> id >> x >> y)) {
        // A keyword ends the section.
        if (std::isalpha(static_cast<unsigned char>(t[0]))) {
          in_coords = false;
        } else {
          throw ParseError(source, lineno, "malformed coordinate line");
        }
      } else {
        if (id < 1 || id > *dimension) throw ParseError(source, lineno, "node id " + std::to_string(id) + " out of range");
        if (seen[static_cast<std::size_t>(id - 1)]) throw ParseError(source, lineno, "duplicate node id " + std::to_string(id));
        seen[static_cast<std::size_t>(id - 1)] = true;
        coords[static_cast<std::size_t>(id - 1)] = {x, y};
        continue;
      }
    }

    if (t == "NODE_COORD_SECTION") {
      if (!dimension) throw ParseError(source, lineno, "NODE_COORD_SECTION before DIMENSION");
      if (edge_type != "EUC_2D") {
        throw ParseError(source, lineno, "unsupported EDGE_WEIGHT_TYPE '" + edge_type + "' (only EUC_2D)");
      }
      coords.assign(static_cast<std::size_t>(*dimension), {0.0, 0.0});
      seen.assign(static_cast<std::size_t>(*dimension), false);
      in_coords = true;
      continue;
    }

    const auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError(source, lineno, "malformed header line '" + t + "'");
    const std::string key = trim(t.substr(0, colon));
    const std::string value = trim(t.substr(colon + 1));
    if (key == "NAME") {
      out.name = value;
    } else if (key == "TYPE") {
      if (value != "TSP") throw ParseError(source, lineno, "unsupported TYPE '" + value + "'");
    } else if (key == "DIMENSION") {
      try {
        std::size_t pos = 0;
        dimension = std::stoll(value, &pos);
        if (pos != value.size() || *dimension < 2) throw std::invalid_argument("bad");
      } catch (const std::exception&) {
        throw ParseError(source, lineno, "invalid DIMENSION '" + value + "'");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      edge_type = value;
      if (edge_type != "EUC_2D") {
        throw ParseError(source, lineno, "unsupported EDGE_WEIGHT_TYPE '" + value + "' (only EUC_2D)");
      }
    }
    // COMMENT and other informational keys are ignored.
  }

  if (!dimension) throw ParseError(source, lineno, "missing DIMENSION");
  if (seen.empty()) throw ParseError(source, lineno, "missing NODE_COORD_SECTION");
  const auto found = static_cast<long long>(std::count(seen.begin(), seen.end(), true));
  if (found != *dimension) {
    throw ParseError(source, lineno,
                     "DIMENSION is " + std::to_string(*dimension) + " but " + std::to_string(found) + " coordinates given");
  }

  const auto n = static_cast<Eigen::Index>(*dimension);
  out.distances = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dx = coords[i].first - coords[j].first;
      const double dy = coords[i].second - coords[j].second;
      const double d = std::floor(std::sqrt(dx * dx + dy * dy) + 0.5);
      out.distances(i, j) = d;
      out.distances(j, i) = d;
    }
  }
  return out;
}

TsplibMatrix parse_tsplib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_tsplib(in, path.string());
}

MtspInstance::MtspInstance(std::vector<Eigen::MatrixXd> costs, std::vector<std::string> sources)
    : n_(costs.empty() ? 0 : static_cast<int>(costs.front().rows())),
      costs_(std::move(costs)),
      sources_(std::move(sources)),
      moves_(enumerate_moves(n_)) {
  if (costs_.size() < 2) throw ParameterError("mTSP needs at least 2 objectives");
  for (const auto& c : costs_) {
    if (c.rows() != n_ || c.cols() != n_) throw ParameterError("mTSP cost matrices must all be n x n");
    if (!(c == c.transpose())) throw ParameterError("mTSP cost matrices must be symmetric");
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == j ? c(i, j) != 0.0 : !(c(i, j) > 0.0)) {
          throw ParameterError("mTSP costs must be positive off the diagonal and zero on it");
        }
      }
    }
  }
}

void MtspInstance::check(const Tour& t) const {
  if (static_cast<int>(t.size()) != n_) throw ContractViolation("mTSP: tour length differs from n");
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  for (int c : t) {
    if (c < 0 || c >= n_ || seen[static_cast<std::size_t>(c)]) throw ContractViolation("mTSP: tour is not a permutation");
    seen[static_cast<std::size_t>(c)] = true;
  }
}

ObjectiveVector MtspInstance::tour_costs(const Tour& t) const {
  check(t);
  ObjectiveVector f = ObjectiveVector::Zero(objectives());
  for (int k = 0; k < objectives(); ++k) {
    const auto& c = costs_[static_cast<std::size_t>(k)];
    for (int p = 0; p < n_; ++p) f[k] += c(t[p], t[(p + 1) % n_]);
  }
  return f;
}

Tour MtspInstance::random_solution(Rng& rng) const {
  Tour t(static_cast<std::size_t>(n_));
  std::iota(t.begin(), t.end(), 0);
  std::shuffle(t.begin(), t.end(), rng);
  return t;
}

ObjectiveVector MtspInstance::evaluate_move(const Tour& t, const ObjectiveVector& ft, Move mv) const {
  const int a = t[static_cast<std::size_t>(mv.first - 1)];
  const int b = t[static_cast<std::size_t>(mv.first)];
  const int d = t[static_cast<std::size_t>(mv.last)];
  const int e = t[static_cast<std::size_t>((mv.last + 1) % n_)];
  ObjectiveVector f = ft;
  for (int k = 0; k < objectives(); ++k) {
    const auto& c = costs_[static_cast<std::size_t>(k)];
    // Edges (a,b),(d,e) are replaced by (a,d),(b,e); objectives are negated costs.
    f[k] -= c(a, d) + c(b, e) - c(a, b) - c(d, e);
  }
  return f;
}

Tour MtspInstance::apply_move(const Tour& t, Move mv) const {
  Tour y = t;
  std::reverse(y.begin() + mv.first, y.begin() + mv.last + 1);
  return y;
}

MtspInstance combine_mtsp(const std::vector<TsplibMatrix>& matrices) {
  if (matrices.size() < 2) throw ParameterError("combine_mtsp: at least 2 TSPLIB instances are required");
  std::vector<Eigen::MatrixXd> costs;
  std::vector<std::string> names;
  for (const auto& m : matrices) {
    if (m.distances.rows() != matrices.front().distances.rows()) {
      throw ParameterError("combine_mtsp: instances differ in size (" + matrices.front().name + " has " +
                           std::to_string(matrices.front().distances.rows()) + " cities, " + m.name + " has " +
                           std::to_string(m.distances.rows()) + ")");
    }
    costs.push_back(m.distances);
    names.push_back(m.name);
  }
  return MtspInstance(std::move(costs), std::move(names));
}

MtspInstance combine_mtsp(const std::vector<std::filesystem::path>& paths) {
  std::vector<TsplibMatrix> mats;
  mats.reserve(paths.size());
  for (const auto& p : paths) mats.push_back(parse_tsplib(p));
  return combine_mtsp(mats);
}

std::vector<Tour> neighbors_2opt(const Tour& x, Rng& rng) {
  const auto moves = enumerate_moves(static_cast<int>(x.size()));
  std::vector<Tour> out;
  if (moves.empty()) return out;
  out.reserve(moves.size());
  const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
  for (std::size_t t = 0; t < moves.size(); ++t) {
    const auto& mv = moves[(offset + t) % moves.size()];
    Tour y = x;
    std::reverse(y.begin() + mv.first, y.begin() + mv.last + 1);
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace ppls

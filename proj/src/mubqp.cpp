#include "ppls/mubqp.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ppls {

MubqpInstance::MubqpInstance(std::vector<Eigen::MatrixXd> q, Metadata meta)
    : n_(q.empty() ? 0 : static_cast<int>(q.front().rows())), q_(std::move(q)), meta_(meta) {
  if (q_.size() < 2) throw ParameterError("mUBQP needs at least 2 objectives");
  for (const auto& qk : q_) {
    if (qk.rows() != n_ || qk.cols() != n_) throw ParameterError("mUBQP matrices must all be n x n");
  }
  sym_.reserve(q_.size());
  for (const auto& qk : q_) sym_.emplace_back(qk + qk.transpose());
}

std::size_t MubqpInstance::nonzeros() const {
  std::size_t c = 0;
  for (const auto& qk : q_) c += static_cast<std::size_t>((qk.array() != 0.0).count());
  return c;
}

void MubqpInstance::check(const BitString& x) const {
  if (x.size() != n_) {
    throw ContractViolation("mUBQP: solution has " + std::to_string(x.size()) + " bits, instance has " +
                            std::to_string(n_));
  }
}

ObjectiveVector MubqpInstance::evaluate(const BitString& x) const {
  check(x);
  const Eigen::VectorXd xd = x.cast<double>();
  ObjectiveVector f(objectives());
  for (int k = 0; k < objectives(); ++k) f[k] = xd.dot(q_[k] * xd);
  return f;
}

BitString MubqpInstance::random_solution(Rng& rng) const {
  std::bernoulli_distribution coin(0.5);
  BitString x(n_);
  for (int i = 0; i < n_; ++i) x[i] = coin(rng) ? 1 : 0;
  return x;
}

ObjectiveVector MubqpInstance::evaluate_move(const BitString& x, const ObjectiveVector& fx, Move i) const {
  const auto idx = static_cast<Eigen::Index>(i);
  const bool on = x[idx] != 0;
  const double sign = on ? -1.0 : 1.0;
  ObjectiveVector f = fx;
  for (int k = 0; k < objectives(); ++k) {
    // Terms touching bit i: q_ii + sum_{j != i} (q_ij + q_ji) x_j.
    const double cross = sym_[k].col(idx).dot(x.cast<double>()) - (on ? sym_[k](idx, idx) : 0.0);
    f[k] += sign * (q_[k](idx, idx) + cross);
  }
  return f;
}

BitString MubqpInstance::apply_move(const BitString& x, Move i) const {
  BitString y = x;
  y[static_cast<Eigen::Index>(i)] ^= 1;
  return y;
}

std::vector<BitString> neighbors_1flip(const BitString& x, Rng& rng) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<BitString> out;
  if (n == 0) return out;
  out.reserve(n);
  const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t t = 0; t < n; ++t) {
    BitString y = x;
    y[static_cast<Eigen::Index>((offset + t) % n)] ^= 1;
    out.push_back(std::move(y));
  }
  return out;
}

MubqpInstance generate_mubqp(int n, int m, double density, double correlation, std::uint64_t seed) {
  if (n < 1) throw ParameterError("generate_mubqp: n must be >= 1");
  if (m < 2) throw ParameterError("generate_mubqp: m must be >= 2");
  if (!(density > 0.0 && density <= 1.0)) throw ParameterError("generate_mubqp: density must be in (0, 1]");
  if (correlation != 0.0) throw ParameterError("generate_mubqp: only correlation 0 is supported");

  Rng rng(seed);
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> value(-100, 100);
  std::vector<Eigen::MatrixXd> q;
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd qk = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (keep(rng)) qk(i, j) = value(rng);
      }
    }
    q.push_back(std::move(qk));
  }
  return MubqpInstance(std::move(q), {density, correlation, seed});
}

void write_mubqp(std::ostream& out, const MubqpInstance& inst) {
  const auto& meta = inst.metadata();
  out << "MUBQP\n";
  out << "n " << inst.size() << "\n";
  out << "m " << inst.objectives() << "\n";
  out << "density " << format_number(meta.density) << "\n";
  out << "correlation " << format_number(meta.correlation) << "\n";
  out << "seed " << meta.seed << "\n";
  out << "nonzeros " << inst.nonzeros() << "\n";
  for (int k = 0; k < inst.objectives(); ++k) {
    const auto& qk = inst.matrix(k);
    for (int i = 0; i < inst.size(); ++i) {
      for (int j = 0; j < inst.size(); ++j) {
        if (qk(i, j) != 0.0) out << k << ' ' << i << ' ' << j << ' ' << format_number(qk(i, j)) << '\n';
      }
    }
  }
}

MubqpInstance read_mubqp(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
      return true;
    }
    return false;
  };

  if (!next() || line != "MUBQP") throw ParseError(source, lineno, "expected 'MUBQP' header");

  long long n = -1, m = -1, nonzeros = -1;
  MubqpInstance::Metadata meta;
  const char* keys[] = {"n", "m", "density", "correlation", "seed", "nonzeros"};
  for (const char* key : keys) {
    if (!next()) throw ParseError(source, lineno, std::string("missing header field '") + key + "'");
    std::istringstream ss(line);
    std::string name;
    ss >> name;
    if (name != key) throw ParseError(source, lineno, std::string("expected '") + key + "', got '" + name + "'");
    bool ok = true;
    if (name == "n") ok = static_cast<bool>(ss >> n);
    else if (name == "m") ok = static_cast<bool>(ss >> m);
    else if (name == "density") ok = static_cast<bool>(ss >> meta.density);
    else if (name == "correlation") ok = static_cast<bool>(ss >> meta.correlation);
    else if (name == "seed") ok = static_cast<bool>(ss >> meta.seed);
    else ok = static_cast<bool>(ss >> nonzeros);
    if (!ok) throw ParseError(source, lineno, "bad value for '" + name + "'");
  }
  if (n < 1 || m < 2 || nonzeros < 0) throw ParseError(source, lineno, "invalid n/m/nonzeros");

  std::vector<Eigen::MatrixXd> q(static_cast<std::size_t>(m), Eigen::MatrixXd::Zero(n, n));
  for (long long t = 0; t < nonzeros; ++t) {
    if (!next()) throw ParseError(source, lineno, "expected " + std::to_string(nonzeros) + " triplets, got " + std::to_string(t));
    std::istringstream ss(line);
    long long k, i, j;
    double v;
    if (!(ss >> k >> i >> j >> v)) throw ParseError(source, lineno, "malformed triplet");
    if (k < 0 || k >= m || i < 0 || i >= n || j < 0 || j >= n) throw ParseError(source, lineno, "triplet index out of range");
    q[static_cast<std::size_t>(k)](i, j) = v;
  }
  if (next()) throw ParseError(source, lineno, "trailing data after triplets");
  return MubqpInstance(std::move(q), meta);
}

MubqpInstance load_mubqp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_mubqp(in, path.string());
}

}  // namespace ppls

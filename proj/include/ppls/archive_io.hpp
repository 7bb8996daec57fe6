#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppls/mtsp.hpp"
#include "ppls/mubqp.hpp"

namespace ppls {

// Archive files are JSON:
//   {"problem": "mubqp"|"mtsp", "objectives": m,
//    "solutions": [{"objectives": [...native orientation...], "genotype": ...}, ...]}
// A mUBQP genotype is a "0101..." string, an mTSP genotype an array of city indices.
// Reading re-evaluates every genotype against the instance and rejects files
// whose recorded objectives disagree.

void write_archive(std::ostream& out, const MubqpInstance& inst, const std::vector<Solution<BitString>>& sols);
void write_archive(std::ostream& out, const MtspInstance& inst, const std::vector<Solution<Tour>>& sols);

std::vector<Solution<BitString>> read_archive(std::istream& in, const MubqpInstance& inst,
                                              const std::string& source = "<stream>");
std::vector<Solution<Tour>> read_archive(std::istream& in, const MtspInstance& inst,
                                         const std::string& source = "<stream>");

template <typename Instance>
auto load_archive(const std::filesystem::path& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_archive(in, inst, path.string());
}

}  // namespace ppls

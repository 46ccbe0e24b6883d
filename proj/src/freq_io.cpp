#include "gibbs/freq_io.hpp"

#include <fstream>
#include <sstream>

namespace gibbs {

FrequencyCounts parse_frequency_file(std::istream& in) {
  FrequencyCounts out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    long l, ml;
    if (!(ls >> l)) {
      std::string rest;
      if (ls.clear(), std::istringstream(line) >> rest)
        throw ParseError("line " + std::to_string(lineno) + ": expected 'l<TAB>m_l'");
      continue;  // blank / comment-only line
    }
    if (!(ls >> ml))
      throw ParseError("line " + std::to_string(lineno) + ": missing count");
    std::string extra;
    if (ls >> extra)
      throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
    if (l < 1 || ml < 1)
      throw ParseError("line " + std::to_string(lineno) + ": values must be positive");
    if (out.m.count(l))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate size " +
                       std::to_string(l));
    out.m[l] = ml;
  }
  if (out.m.empty()) throw ParseError("no frequency entries found");
  return out;
}

FrequencyCounts load_frequency_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return parse_frequency_file(f);
}

std::string serialize_frequency_counts(const FrequencyCounts& counts) {
  std::ostringstream os;
  for (auto [l, ml] : counts.m)
    if (ml > 0) os << l << '\t' << ml << '\n';
  return os.str();
}

const PartitionData& tomato_dataset() {
  static const PartitionData data = [] {
    FrequencyCounts c;
    c.m = {{1, 1434}, {2, 253}, {3, 71}, {4, 33}, {5, 11}, {6, 6},
           {7, 2},    {8, 3},   {9, 1},  {10, 2}, {11, 2}, {12, 1},
           {13, 1},   {14, 1},  {16, 2}, {23, 1}, {27, 1}};
    PartitionData d = PartitionData::from_counts(c);
    if (d.n != 2586 || d.j != 1825)
      throw std::logic_error("bundled dataset is inconsistent");
    return d;
  }();
  return data;
}

}  // namespace gibbs

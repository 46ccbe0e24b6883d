#ifndef GIBBS_FREQ_IO_HPP
#define GIBBS_FREQ_IO_HPP

#include "gibbs/model.hpp"

#include <iosfwd>
#include <string>

namespace gibbs {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// frequency files: "l<TAB>m_l" per line, '#' comments, duplicates rejected
FrequencyCounts parse_frequency_file(std::istream& in);
FrequencyCounts load_frequency_file(const std::string& path);
std::string serialize_frequency_counts(const FrequencyCounts& counts);

// the bundled EST expression-level dataset (n = 2586 genes, j = 1825 distinct)
const PartitionData& tomato_dataset();

}  // namespace gibbs

#endif

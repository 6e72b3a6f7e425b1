#ifndef FRIEDRICHS_CSV_HPP
#define FRIEDRICHS_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace friedrichs {

/// 17 significant digits: doubles round-trip exactly through the CSV files.
inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// CSV emitter that prefixes the file with `# `-commented lines (the resolved
/// configuration) followed by a header row.  Rows are written in caller
/// order, so output bytes do not depend on the worker count.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& comment_block,
            const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file '" + path + "'");
    std::istringstream cb(comment_block);
    std::string line;
    while (std::getline(cb, line)) out_ << "# " << line << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i)
      out_ << fields[i] << (i + 1 < fields.size() ? "," : "");
    out_ << "\n";
  }

private:
  std::ofstream out_;
};

}  // namespace friedrichs

#endif

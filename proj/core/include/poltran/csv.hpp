#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace poltran {

// RFC-4180 output with LF line endings, '.' decimal separator and 12
// significant digits. Provenance lines ('# key: value') precede the header
// row so identical configs yield byte-identical files.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::map<std::string, std::string>& provenance);
  ~CsvWriter();

  void row(const std::vector<double>& values);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::size_t n_columns_;
  void* file_;  // FILE*
};

std::string format_sig12(double v);

struct CsvTable {
  std::map<std::string, std::string> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::string& path);

}  // namespace poltran

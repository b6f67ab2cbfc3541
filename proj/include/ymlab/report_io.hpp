#ifndef YMLAB_REPORT_IO_HPP
#define YMLAB_REPORT_IO_HPP

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace ymlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormatVersion = 1;

// 17 significant digits, '.' decimal point; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

// Writes to a temporary sibling and renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// {"format": "ymlab-report", "format_version": 1, "kind": kind, "config": config, ...body}
Json report_document(const std::string& kind, const Json& config, const Json& body);
std::string dump(const Json& doc);

// Non-finite doubles become strings so that the JSON stays loss-free.
Json number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return rows_.size(); }
  // A "# ymlab-csv" comment line carrying the format version and config
  // echo, then the header and the rows, '\n' line endings.
  std::string str(const Json& config) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace ymlab

#endif

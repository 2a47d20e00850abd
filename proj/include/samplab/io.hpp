#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace samplab {

// Shortest-faithful float text: 17 significant digits.
std::string format_g17(double v);

// Write-temp-then-rename so partial files never appear under the final name.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Minimal RFC 4180 writer: comma separated, CRLF records, header row.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void add_row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  void append_record(const std::vector<std::string>& fields);
  std::string out_;
  std::size_t columns_ = 0;
};

}  // namespace samplab

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace kgapp::csv {

// RFC 4180 style reader: quoted fields may contain the delimiter, doubled
// quotes and newlines. Returns one vector of cells per record.
class Reader {
 public:
  Reader(std::string_view text, char delimiter);

  // False at end of input. `record_line` is the 1-based line where the
  // record starts.
  bool Next(std::vector<std::string>& record);
  std::size_t record_line() const noexcept { return record_line_; }

 private:
  std::string_view text_;
  char delimiter_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string EscapeField(std::string_view field, char delimiter);
std::string JoinRecord(const std::vector<std::string>& cells, char delimiter);

}  // namespace kgapp::csv

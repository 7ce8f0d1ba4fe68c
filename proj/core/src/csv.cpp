#include "kgapp/csv.hpp"

#include "kgapp/error.hpp"

namespace kgapp::csv {

Reader::Reader(std::string_view text, char delimiter) : text_(text), delimiter_(delimiter) {
  // UTF-8 byte order mark
  if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
}

bool Reader::Next(std::vector<std::string>& record) {
  record.clear();
  // Skip blank lines between records.
  while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
    if (text_[pos_] == '\n') ++line_;
    ++pos_;
  }
  if (pos_ >= text_.size()) return false;
  record_line_ = line_;

  std::string cell;
  bool quoted = false;
  bool cell_started_quoted = false;
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (quoted) {
      if (c == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          cell.push_back('"');
          pos_ += 2;
          continue;
        }
        quoted = false;
        ++pos_;
        continue;
      }
      if (c == '\n') ++line_;
      cell.push_back(c);
      ++pos_;
      continue;
    }
    if (c == '"' && cell.empty() && !cell_started_quoted) {
      quoted = true;
      cell_started_quoted = true;
      ++pos_;
      continue;
    }
    if (c == delimiter_) {
      record.push_back(std::move(cell));
      cell.clear();
      cell_started_quoted = false;
      ++pos_;
      continue;
    }
    if (c == '\r' || c == '\n') {
      if (c == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') ++pos_;
      ++pos_;
      ++line_;
      break;
    }
    cell.push_back(c);
    ++pos_;
  }
  if (quoted) throw ParseError("unterminated quoted field", ParseError::Unit::kLine, record_line_);
  record.push_back(std::move(cell));
  return true;
}

std::string EscapeField(std::string_view field, char delimiter) {
  bool needs = field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string JoinRecord(const std::vector<std::string>& cells, char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(delimiter);
    out += EscapeField(cells[i], delimiter);
  }
  return out;
}

}  // namespace kgapp::csv

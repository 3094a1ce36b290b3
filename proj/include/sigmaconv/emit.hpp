#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sigmaconv::emit {

// 17 significant digits, '.' decimal point, no grouping
std::string format_number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;  // optional trailing row (e.g. fit results)
};

// header row, LF line endings, fields joined by commas
void write_csv(const Table& t, std::ostream& os);

// writes to the file at path, or to the stream when path is empty;
// I/O failures throw std::runtime_error
void write_output(const std::string& text, const std::string& path,
                  std::ostream& fallback);

}  // namespace sigmaconv::emit

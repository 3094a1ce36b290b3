#include "sigmaconv/emit.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sigmaconv::emit {

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  auto emit_row = [&os](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  };
  emit_row(t.header);
  for (const auto& row : t.rows) emit_row(row);
  if (!t.footer.empty()) emit_row(t.footer);
}

void write_output(const std::string& text, const std::string& path,
                  std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    fallback.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace sigmaconv::emit

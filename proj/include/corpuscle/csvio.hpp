#pragma once

#include <string>
#include <vector>

namespace corpuscle {

// Round-trip-exact double formatting ("%.17g").
std::string format_double(double v);

// Write content to path atomically (temp file in the same directory + rename).
void atomic_write(const std::string& path, const std::string& content);

// Minimal CSV assembler with fixed formatting.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row_raw(const std::vector<std::string>& values);
    const std::string& str() const { return buf_; }
    void write(const std::string& path) const { atomic_write(path, buf_); }

  private:
    std::size_t columns_;
    std::string buf_;
};

}  // namespace corpuscle

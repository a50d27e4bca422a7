#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace ssf {

std::string fmt(double v);  // 17 significant digits
std::string fmt(std::uint64_t v);
std::string fmt(int v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::string& path() const { return path_; }

 private:
  void write(const std::vector<std::string>& cells);
  std::string path_;
  std::size_t width_;
  std::ofstream out_;
};

}  // namespace ssf

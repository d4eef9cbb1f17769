#pragma once

#include <Eigen/Core>
#include <complex>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace twosphere {

// Scientific notation, 17 significant digits, independent of the C locale.
std::string format_number(double v);

// Minimal CSV writer: the header row is written on construction.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  CsvWriter& field(double v);
  CsvWriter& field(long long v);
  CsvWriter& field(const std::string& v);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  std::size_t columns_;
  std::size_t current_ = 0;
};

// Row-major little-endian complex64 (two float32) dump of a dense matrix,
// preceded by a 16-byte header: magic "TSOP", uint32 version, uint32 rows, uint32 cols.
void dump_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& re,
                        const Eigen::MatrixXd& im);

}  // namespace twosphere

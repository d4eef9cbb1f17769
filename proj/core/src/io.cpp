#include "twosphere/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "twosphere/error.hpp"

namespace twosphere {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (const auto& h : header) field(h);
  end_row();
}

void CsvWriter::sep() {
  if (current_++ > 0) out_ << ',';
}

CsvWriter& CsvWriter::field(double v) {
  sep();
  out_ << format_number(v);
  return *this;
}

CsvWriter& CsvWriter::field(long long v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::field(const std::string& v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (current_ != columns_) throw Error(ErrorCode::Io, "CSV row has wrong number of fields");
  out_ << '\n';
  current_ = 0;
}

namespace {
void put_u32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xffu);
  out.write(reinterpret_cast<const char*>(b), 4);
}
void put_f32(std::ofstream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }
}  // namespace

void dump_matrix_binary(const std::filesystem::path& path, const Eigen::MatrixXd& re,
                        const Eigen::MatrixXd& im) {
  const auto rows = std::max(re.rows(), im.rows());
  const auto cols = std::max(re.cols(), im.cols());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write("TSOP", 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(rows));
  put_u32(out, static_cast<std::uint32_t>(cols));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      put_f32(out, re.size() ? static_cast<float>(re(i, j)) : 0.0f);
      put_f32(out, im.size() ? static_cast<float>(im(i, j)) : 0.0f);
    }
}

}  // namespace twosphere

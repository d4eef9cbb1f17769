#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "twosphere/error.hpp"
#include "twosphere/io.hpp"
#include "twosphere/parallel.hpp"

using namespace twosphere;

TEST(Io, NumbersUseSeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_number(-2.5), "-2.5000000000000000e+00");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Io, CsvWriterEnforcesColumns) {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b"});
  w.field(1.0).field(std::string("x"));
  w.end_row();
  EXPECT_EQ(out.str(), "a,b\n1.0000000000000000e+00,x\n");
  w.field(2.0);
  EXPECT_THROW(w.end_row(), Error);
}

TEST(Io, MatrixDumpHeader) {
  const auto path = std::filesystem::temp_directory_path() / "twosphere_dump_test.bin";
  Eigen::MatrixXd re(2, 3);
  re << 1, 2, 3, 4, 5, 6;
  dump_matrix_binary(path, re, Eigen::MatrixXd());
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "TSOP");
  unsigned char buf[12];
  in.read(reinterpret_cast<char*>(buf), 12);
  auto u32 = [&buf](int o) { return std::uint32_t(buf[o]) | std::uint32_t(buf[o + 1]) << 8 | std::uint32_t(buf[o + 2]) << 16 | std::uint32_t(buf[o + 3]) << 24; };
  EXPECT_EQ(u32(4), 2u);
  EXPECT_EQ(u32(8), 3u);
  EXPECT_EQ(std::filesystem::file_size(path), 16u + 6u * 8u);
  std::filesystem::remove(path);
}

TEST(Parallel, EveryIndexOnceForAnyThreadCount) {
  for (int t : {1, 3, 8}) {
    set_thread_count(t);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
  set_thread_count(1);
}

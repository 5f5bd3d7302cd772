#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "shockline/errors.hpp"
#include "shockline/snapshot_io.hpp"

namespace shockline {
namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() /
         (std::string("shockline_") + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + name);
}

TEST(SnapshotIo, RoundTrip) {
  const GasModel gm(1.4, 2.0);
  const DampingLaw dl(0.3, 1.0);
  ProfileSpec p;
  p.preset = Preset::kSine;
  p.tau_amp = 0.1;
  p.u_amp = 0.2;
  RunOptions ro;
  ro.t_end = 0.5;
  const RunResult r = run(init_field(p, Grid::periodic(32, 3.0), gm), gm, dl, ro);
  const auto path = temp_file("roundtrip.bin");
  write_snapshots(path, r.snapshots, gm, dl);
  EXPECT_EQ(std::filesystem::file_size(path),
            kSnapshotHeaderBytes + r.snapshots.size() * (1 + 2 * 32) * 8);
  const SnapshotFile back = read_snapshots(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.gamma, 1.4);
  EXPECT_EQ(back.big_k, 2.0);
  EXPECT_EQ(back.alpha, 0.3);
  EXPECT_EQ(back.lambda, 1.0);
  EXPECT_EQ(back.store.grid.n, 32u);
  EXPECT_DOUBLE_EQ(back.store.grid.length(), 3.0);
  EXPECT_EQ(back.store.times, r.snapshots.times);
  EXPECT_EQ(back.store.tau, r.snapshots.tau);
  EXPECT_EQ(back.store.u, r.snapshots.u);
}

TEST(SnapshotIo, RejectsBadFiles) {
  const auto path = temp_file("bad.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOTASNAPSHOTFILE-NOTASNAPSHOTFILE-NOTASNAPSHOTFILE-NOTASNAPSHOT";
  }
  EXPECT_THROW(read_snapshots(path), Error);
  std::filesystem::remove(path);
  EXPECT_THROW(read_snapshots(path), Error);
}

TEST(SnapshotIo, RejectsTruncatedRecord) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(0.0, 0.0);
  SnapshotStore store;
  store.grid = Grid::periodic(16, 1.0);
  store.append(init_field(ProfileSpec{}, store.grid, gm));
  const auto path = temp_file("trunc.bin");
  write_snapshots(path, store, gm, dl);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  EXPECT_THROW(read_snapshots(path), Error);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace shockline

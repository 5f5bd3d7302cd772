#include "shockline/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "shockline/errors.hpp"

namespace shockline {
namespace {

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
  }
}

class Writer {
 public:
  explicit Writer(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
  }
  void u64(std::uint64_t v) {
    const std::uint64_t le = to_little(v);
    out_.write(reinterpret_cast<const char*>(&le), 8);
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void raw(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  void finish(const std::filesystem::path& path) {
    out_.flush();
    if (!out_) throw Error("write to " + path.string() + " failed");
  }

 private:
  std::ofstream out_;
};

std::uint64_t load_u64(const unsigned char* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return to_little(v);
}

double load_f64(const unsigned char* p) { return std::bit_cast<double>(load_u64(p)); }

}  // namespace

void write_snapshots(const std::filesystem::path& path, const SnapshotStore& store,
                     const GasModel& gm, const DampingLaw& dl) {
  Writer w(path);
  w.raw(kSnapshotMagic, sizeof kSnapshotMagic);
  w.u64(store.grid.n);
  w.f64(store.grid.length());
  w.f64(gm.gamma());
  w.f64(gm.big_k());
  w.f64(dl.alpha());
  w.f64(dl.lambda());
  for (std::size_t k = 0; k < store.size(); ++k) {
    w.f64(store.times[k]);
    for (std::size_t i = 0; i < store.grid.n; ++i) {
      w.f64(store.tau[k][i]);
      w.f64(store.u[k][i]);
    }
  }
  w.finish(path);
}

SnapshotFile read_snapshots(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  if (bytes.size() < kSnapshotHeaderBytes ||
      std::memcmp(bytes.data(), kSnapshotMagic, sizeof kSnapshotMagic) != 0) {
    throw Error(path.string() + " is not a snapshot file");
  }
  const unsigned char* p = bytes.data() + 8;
  const std::uint64_t n = load_u64(p);
  SnapshotFile f;
  const double length = load_f64(p + 8);
  f.gamma = load_f64(p + 16);
  f.big_k = load_f64(p + 24);
  f.alpha = load_f64(p + 32);
  f.lambda = load_f64(p + 40);
  if (n < Grid::kMinCells || n > (1u << 28)) throw Error("implausible cell count in " + path.string());
  f.store.grid = Grid::periodic(n, length);

  const std::size_t record = 8 * (1 + 2 * n);
  const std::size_t body = bytes.size() - kSnapshotHeaderBytes;
  if (body % record != 0) throw Error(path.string() + " ends inside a record");
  for (std::size_t off = kSnapshotHeaderBytes; off < bytes.size(); off += record) {
    const unsigned char* r = bytes.data() + off;
    f.store.times.push_back(load_f64(r));
    std::vector<double> tau(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
      tau[i] = load_f64(r + 8 + 16 * i);
      u[i] = load_f64(r + 16 + 16 * i);
    }
    f.store.tau.push_back(std::move(tau));
    f.store.u.push_back(std::move(u));
  }
  return f;
}

}  // namespace shockline

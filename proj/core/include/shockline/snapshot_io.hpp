#pragma once

// Binary snapshot dumps.
//
// Layout, all fields little-endian 64-bit:
//   header  magic "SHKL1\0\0\0", n (uint64), L, gamma, K, alpha, lambda (double)
//   record  t, then tau_0, u_0, tau_1, u_1, ... tau_{n-1}, u_{n-1}
// The record count follows from the file size. The grid origin is not stored;
// readers get x0 = 0.

#include <filesystem>

#include "shockline/core.hpp"
#include "shockline/solver.hpp"

namespace shockline {

inline constexpr char kSnapshotMagic[8] = {'S', 'H', 'K', 'L', '1', '\0', '\0', '\0'};
inline constexpr std::size_t kSnapshotHeaderBytes = 56;

struct SnapshotFile {
  SnapshotStore store;
  double gamma = 0.0;
  double big_k = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
};

/// Throws Error on I/O failure.
void write_snapshots(const std::filesystem::path& path, const SnapshotStore& store,
                     const GasModel& gm, const DampingLaw& dl);

/// Throws Error on I/O failure, bad magic or a truncated record.
SnapshotFile read_snapshots(const std::filesystem::path& path);

}  // namespace shockline

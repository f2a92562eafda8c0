#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "nshd/field.hpp"

namespace nshd {

struct CheckpointHeader {
  int n = 0;
  int N = 0;
  double alpha = 0.0;
  double nu = 0.0;
  double time = 0.0;
  std::uint64_t seed = 0;
};

struct Checkpoint {
  CheckpointHeader header;
  SpectralVectorField field;
};

// Layout (little-endian): "NSHD", u8 version = 1, u8 n, u32 N, f64 alpha,
// f64 nu, f64 time, u64 seed, then per component every coefficient in flat
// FFT order as (f64 re, f64 im).
inline constexpr std::uint8_t kCheckpointVersion = 1;

void write_checkpoint(std::ostream& out, const SpectralVectorField& u, double alpha, double nu,
                      std::uint64_t seed);
void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& u,
                      double alpha, double nu, std::uint64_t seed);

Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace nshd

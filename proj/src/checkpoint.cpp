#include "nshd/checkpoint.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "nshd/errors.hpp"

namespace nshd {

namespace {

constexpr std::array<char, 4> kMagic{'N', 'S', 'H', 'D'};

template <typename T>
void put(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw CheckpointError("checkpoint truncated");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_checkpoint(std::ostream& out, const SpectralVectorField& u, double alpha, double nu,
                      std::uint64_t seed) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint8_t>(out, kCheckpointVersion);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(u.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(u.lattice->modes_per_axis()));
  put<double>(out, alpha);
  put<double>(out, nu);
  put<double>(out, u.time);
  put<std::uint64_t>(out, seed);
  for (const auto& c : u.coeffs) {
    for (const auto& z : c) {
      put<double>(out, z.real());
      put<double>(out, z.imag());
    }
  }
  if (!out) throw CheckpointError("failed writing checkpoint");
}

void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& u, double alpha,
                      double nu, std::uint64_t seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, u, alpha, nu, seed);
}

Checkpoint read_checkpoint(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw CheckpointError("bad checkpoint magic");
  }
  const auto version = get<std::uint8_t>(in);
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  Checkpoint cp;
  cp.header.n = get<std::uint8_t>(in);
  cp.header.N = static_cast<int>(get<std::uint32_t>(in));
  cp.header.alpha = get<double>(in);
  cp.header.nu = get<double>(in);
  cp.header.time = get<double>(in);
  cp.header.seed = get<std::uint64_t>(in);

  LatticePtr lat;
  try {
    lat = build_lattice(cp.header.n, cp.header.N);
  } catch (const InvalidArgument& e) {
    throw CheckpointError(std::string("checkpoint header: ") + e.what());
  }
  cp.field = SpectralVectorField(lat, cp.header.time);
  for (auto& c : cp.field.coeffs) {
    for (auto& z : c) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      z = Complex(re, im);
    }
  }
  return cp;
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace nshd

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nshd {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument to a lattice, field, or solver operation.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A time step produced a non-finite coefficient.
class Diverged : public Error {
 public:
  Diverged(double t, std::uint64_t step)
      : Error("non-finite coefficient at t=" + std::to_string(t) +
              ", step=" + std::to_string(step)),
        time(t),
        step_count(step) {}

  double time;
  std::uint64_t step_count;
};

/// Scale transform requested at alpha <= 1/2, where the exponents are undefined.
class DegenerateScaling : public Error {
 public:
  using Error::Error;
};

/// Rescaled field would leave the dealiased band.
class RescaleOverflow : public Error {
 public:
  using Error::Error;
};

/// Random initial condition requested on a shell containing no modes.
class EmptyBand : public Error {
 public:
  using Error::Error;
};

/// Moment-inequality monitor called with fewer than three records.
class NotEnoughSamples : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported checkpoint file.
class CheckpointError : public Error {
 public:
  using Error::Error;
};

}  // namespace nshd

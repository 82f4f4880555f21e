#pragma once

// Philox4x32-10 counter-based generator. A stream is identified by
// (seed, stream id); block i of a stream is philox(counter = {i, stream},
// key = seed), so any replica can be regenerated without running the others.

#include <array>
#include <cstdint>

namespace assemblyline {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Stream id for replica `replica` of experiment component `purpose`.
std::uint64_t stream_id(std::uint64_t purpose, std::uint64_t replica);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on {0, ..., bound - 1}; bound > 0. Lemire's multiply-and-reject.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  bool coin() { return (next_u32() & 1u) != 0; }

 private:
  void refill();

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  unsigned used_ = 4;
};

}  // namespace assemblyline

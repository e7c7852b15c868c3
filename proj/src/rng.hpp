#pragma once

// Counter-based RNG (Philox4x32, 10 rounds). Output is a pure function of
// (counter, key), so reproducible substreams are just distinct counters:
// the seed fills the key, the stream id fills the high counter words and
// the draw position fills the low ones.

#include <array>
#include <cstdint>

namespace qcorr {

inline constexpr const char* kRngAlgorithm = "philox4x32-10";

std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint32_t next_u32();
  // [0, 1) with a full 53-bit mantissa built from two 32-bit draws.
  double uniform01();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace qcorr

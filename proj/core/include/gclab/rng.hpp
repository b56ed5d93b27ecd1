#pragma once

#include <array>
#include <cstdint>

namespace gclab {

/// Philox4x32-10 block function (Salmon et al., Random123).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Counter-based stream keyed by (seed, stream id).
///
/// Draw k of stream s under seed S is a pure function of (S, s, k), so any
/// partition of replicates across threads reproduces the serial values bit for
/// bit. The seed is the Philox key; the stream id fills the upper two counter
/// words and the draw index the lower two.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double next_uniform() noexcept;
  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double next_normal() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Stream id for replicate `replicate` of grid point `grid_index`.
constexpr std::uint64_t replicate_stream(std::uint64_t grid_index, std::uint64_t replicate) noexcept {
  return (grid_index << 32) ^ replicate;
}

}  // namespace gclab

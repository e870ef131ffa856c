#pragma once

#include <cstdint>

namespace saddlescape {

/// Counter-based generator. A stream is the pair (seed, stream_id); draw i
/// is a pure function of (seed, stream_id, i), so sequences do not depend on
/// platform or scheduling. Child streams are derived deterministically.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1], safe for log().
  double uniform_open0();
  double normal();

  // Child stream keyed by the next draw; advances this stream by one.
  RngStream split();
  // Child stream j; does not advance this stream.
  RngStream substream(std::uint64_t j) const;

  bool operator==(const RngStream& o) const = default;

 private:
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace saddlescape

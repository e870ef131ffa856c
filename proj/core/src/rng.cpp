#include "saddlescape/rng.hpp"

#include <cmath>
#include <numbers>

namespace saddlescape {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL));
}
}  // namespace

std::uint64_t splitmix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(derive_key(seed, stream_id)) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t key)
    : seed_(seed), stream_id_(stream_id), key_(key) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open0() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform_open0();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

RngStream RngStream::split() {
  const std::uint64_t k = next_u64();
  return RngStream(seed_, stream_id_, splitmix64(k ^ 0xd1b54a32d192ed03ULL));
}

RngStream RngStream::substream(std::uint64_t j) const {
  return RngStream(seed_, stream_id_, splitmix64(key_ ^ splitmix64(j + 0x8cb92ba72f3d8dd7ULL)));
}

}  // namespace saddlescape

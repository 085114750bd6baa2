#include "hdtest/rng.hpp"

#include <array>

namespace hdtest {
namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::Engine make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  const std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream_id),
      static_cast<std::uint32_t>(stream_id >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return RngStream::Engine(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::derive(std::uint64_t tag, std::uint64_t index) const {
  const std::uint64_t child = mix(mix(stream_id_ ^ mix(tag)) + index);
  return RngStream(seed_, child);
}

}  // namespace hdtest

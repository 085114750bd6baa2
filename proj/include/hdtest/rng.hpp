#pragma once

#include <cstdint>
#include <random>

namespace hdtest {

/// A keyed random stream. The engine state is a pure function of
/// (seed, stream_id), so replication r of an experiment draws the same
/// numbers no matter which worker runs it or in what order.
class RngStream {
 public:
  using Engine = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream keyed by (tag, index) under this stream's id. Children with
  /// different keys are seeded independently.
  RngStream derive(std::uint64_t tag, std::uint64_t index = 0) const;

  Engine& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  Engine engine_;
};

namespace stream_tag {
inline constexpr std::uint64_t kScenario = 1;
inline constexpr std::uint64_t kCoefficients = 2;
inline constexpr std::uint64_t kReplication = 3;
inline constexpr std::uint64_t kAlternative = 4;
}  // namespace stream_tag

}  // namespace hdtest

#pragma once

#include <cstdint>
#include <random>

namespace arago::detail {

/// Seeded uniform variates with a bit-exact mapping (std distributions are
/// implementation-defined).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double open01() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace arago::detail

#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace uwbsim {

/// splitmix64 finalizer; full avalanche on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a master seed and a path of indices
/// (run, point, anchor, channel, ...). The result depends only on the
/// values, never on the order in which children are created.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t v : path) h = mix64(h ^ mix64(v + 0x632be59bd9b4e019ULL));
  return h;
}

/// Anything that yields uniform variates on the open interval (0, 1).
template <typename S>
concept UniformSource = requires(S& s) {
  { s.uniform() } -> std::convertible_to<double>;
};

/// Single-owner pseudo-random stream. uniform() is bit-reproducible across
/// platforms: it uses the raw 64-bit engine output rather than
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Source that always returns the same value; used for median draws and tests.
struct FixedUniform {
  double u = 0.5;
  double uniform() const { return u; }
};

}  // namespace uwbsim

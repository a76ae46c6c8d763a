#pragma once

// Platform-stable pseudo-randomness.
//
// The generator is part of the reproducibility contract: xoshiro256** with its
// 256-bit state filled from four consecutive splitmix64 outputs of the seed.
// Bounded integers use Lemire's multiply-shift with rejection, reals use the
// top 53 bits, and shuffles are explicit Fisher-Yates from the last index
// down. None of the std:: distributions are used because their output is
// implementation-defined.

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <utility>

namespace tfc {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent sub-stream, e.g. one retry of a randomized split.
inline Seed derive_seed(Seed base, std::uint64_t stream) {
  std::uint64_t state = base.value ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  return Seed{splitmix64(state)};
}

class Rng {
 public:
  explicit Rng(Seed seed) {
    std::uint64_t sm = seed.value;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace tfc

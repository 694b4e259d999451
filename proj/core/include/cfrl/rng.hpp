#pragma once

#include <cstdint>
#include <random>

namespace cfrl {

// SplitMix64 finalizer. Used to turn (seed, stream id) pairs into
// well-separated generator seeds so that parallel workers can own
// independent streams without coordinating.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Generator for a given stream of a master seed. Results depend only on
// (seed, stream), never on scheduling order.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(derive_seed(seed, stream));
}

}  // namespace cfrl

#pragma once

#include <cstdint>
#include <random>

namespace endonav {

// splitmix64 step; used to derive independent seeds from a base seed plus
// stream/tick tags so that subsystems consume decoupled random streams.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t tick = 0) {
  return mix64(mix64(base ^ mix64(stream)) ^ mix64(tick));
}

// Stream tags for the per-trial random streams.
enum class RngStream : std::uint64_t {
  SenseNoise = 1,
  Disturbance = 2,
  MpcSampler = 3,
  ImageWeights = 4,
  ShapeWeights = 5,
};

inline std::uint64_t derive_seed(std::uint64_t base, RngStream stream, std::uint64_t tick = 0) {
  return derive_seed(base, static_cast<std::uint64_t>(stream), tick);
}

}  // namespace endonav

#pragma once

// Seeding scheme for reproducible Monte-Carlo runs.
//
// Every random stream is a std::mt19937_64 seeded with
//   derive_seed(master, {salt, trial, sequence, ...})
// where derive_seed folds each key into a SplitMix64 state:
//   h = splitmix64(master); for key in keys: h = splitmix64(h ^ splitmix64(key + 1))
// Streams depend only on their keys, never on scheduling, so results are
// identical for any worker count.

#include <cstdint>
#include <initializer_list>
#include <random>

namespace seqclust {

// One SplitMix64 output step (Steele, Lea & Flood 2014 constants).
std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    return Rng(derive_seed(master, keys));
}

}  // namespace seqclust

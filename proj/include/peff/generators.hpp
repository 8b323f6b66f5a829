#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "peff/pca.hpp"

namespace peff {

inline constexpr std::uint64_t kDefaultSeed = 0x5eff2024;

// Deterministic splitmix64 stream; every randomized suite draws from one of
// the named generators below so runs are reproducible from the seed alone.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

private:
  std::uint64_t state_;
};

// gen.closed-term: closed terms of bounded depth over the full grammar.
TermPtr gen_closed_term(Rng& rng, unsigned depth = 4);

// gen.applicable-body: single-free-variable bodies avoiding Fix, so the
// beta-law comparison converges within suite fuel.
TermPtr gen_applicable_body(Rng& rng, unsigned depth = 3);

// gen.small-nat: naturals below the bound.
Nat gen_small_nat(Rng& rng, std::uint64_t bound = 64);

inline const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {
      "gen.closed-term", "gen.applicable-body", "gen.small-nat"};
  return names;
}

}  // namespace peff

#include "peff/generators.hpp"

namespace peff {

namespace {

TermPtr gen_term(Rng& rng, unsigned depth, unsigned binders, bool allow_fix) {
  // Leaves only once the depth budget runs out.
  unsigned pick = depth == 0 ? static_cast<unsigned>(rng.below(2))
                             : static_cast<unsigned>(rng.below(allow_fix ? 10 : 9));
  switch (pick) {
    case 0: return lit_(Nat(rng.below(100)));
    case 1:
      if (binders == 0) return lit_(Nat(rng.below(100)));
      return var_(static_cast<std::uint32_t>(rng.below(binders)));
    case 2: return lam_(gen_term(rng, depth - 1, binders + 1, allow_fix));
    case 3:
      return app_(lam_(gen_term(rng, depth - 1, binders + 1, allow_fix)),
                  gen_term(rng, depth - 1, binders, allow_fix));
    case 4: return succ_(gen_term(rng, depth - 1, binders, allow_fix));
    case 5:
      return natcase_(gen_term(rng, depth - 1, binders, allow_fix),
                      gen_term(rng, depth - 1, binders, allow_fix),
                      gen_term(rng, depth - 1, binders + 1, allow_fix));
    case 6:
      return pair_(gen_term(rng, depth - 1, binders, allow_fix),
                   gen_term(rng, depth - 1, binders, allow_fix));
    case 7: return fst_(gen_term(rng, depth - 1, binders, allow_fix));
    case 8: return snd_(gen_term(rng, depth - 1, binders, allow_fix));
    default: return fix_(gen_term(rng, depth - 1, binders + 1, allow_fix));
  }
}

}  // namespace

TermPtr gen_closed_term(Rng& rng, unsigned depth) {
  return gen_term(rng, depth, 0, true);
}

TermPtr gen_applicable_body(Rng& rng, unsigned depth) {
  return gen_term(rng, depth, 1, false);
}

Nat gen_small_nat(Rng& rng, std::uint64_t bound) { return Nat(rng.below(bound)); }

}  // namespace peff

#include "peff/realizers.hpp"

#include <mutex>

namespace peff {

PcaCode code_identity() {
  static const PcaCode c = encode(lam_(var_(0)));
  return c;
}

PcaCode code_compose(const PcaCode& m, const PcaCode& n) {
  return encode(lam_(capp(m, capp(n, var_(0)))));
}

PcaCode code_const(const Nat& k) { return encode(lam_(lit_(k))); }

PcaCode code_fst() {
  static const PcaCode c = encode(lam_(fst_(var_(0))));
  return c;
}

PcaCode code_snd() {
  static const PcaCode c = encode(lam_(snd_(var_(0))));
  return c;
}

PcaCode code_fam_identity() {
  static const PcaCode c = encode(lam_(lam_(var_(0))));
  return c;
}

PcaCode code_fam_compose(const PcaCode& m, const PcaCode& n) {
  return encode(lam_(lam_(app_(app_(lit_(m), var_(1)),
                               app_(app_(lit_(n), var_(1)), var_(0))))));
}

namespace {

// Term deciding var(0) == k for small k by a nested chain of natcases; each
// level recurses on the freshly bound predecessor.
TermPtr eq_small(const Nat& k) {
  if (k == 0) return natcase_(var_(0), lit_(1), lit_(0));
  return natcase_(var_(0), lit_(0), eq_small(k - 1));
}

constexpr unsigned kUnaryEqBound = 16;

std::map<Nat, PcaCode>& eq_cache() {
  static std::map<Nat, PcaCode> cache;
  return cache;
}

std::mutex& eq_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

PcaCode code_eq_const(const Nat& c) {
  {
    std::lock_guard<std::mutex> lock(eq_mutex());
    auto it = eq_cache().find(c);
    if (it != eq_cache().end()) return it->second;
  }
  PcaCode result;
  if (c <= kUnaryEqBound) {
    result = encode(lam_(eq_small(c)));
  } else {
    auto [a, b] = cantor_unpair(c);
    PcaCode ea = code_eq_const(a);
    PcaCode eb = code_eq_const(b);
    // x == c  iff  fst x == fst c and snd x == snd c (Cantor is a bijection).
    result = encode(lam_(natcase_(capp(ea, fst_(var_(0))), lit_(0),
                                  capp(eb, snd_(var_(1))))));
  }
  std::lock_guard<std::mutex> lock(eq_mutex());
  eq_cache().emplace(c, result);
  return result;
}

PcaCode code_table_terms(const std::vector<std::pair<Nat, TermPtr>>& entries,
                         TermPtr fallback) {
  // Dispatch nests through the zero branch, so the scrutinee stays var(0);
  // taken branches must be closed terms since they sit under one binder.
  TermPtr body = std::move(fallback);
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (!term_closed(it->second))
      throw Error("table-branch", "table entries must be closed terms");
    body = natcase_(capp(code_eq_const(it->first), var_(0)), body, it->second);
  }
  return encode(lam_(body));
}

PcaCode code_table(const std::vector<std::pair<Nat, Nat>>& entries, const Nat& fallback) {
  std::vector<std::pair<Nat, TermPtr>> terms;
  terms.reserve(entries.size());
  for (const auto& [k, v] : entries) terms.emplace_back(k, lit_(v));
  return code_table_terms(terms, lit_(fallback));
}

PcaCode code_table2(const std::vector<std::pair<std::pair<Nat, Nat>, Nat>>& entries,
                    const Nat& fallback) {
  std::vector<std::pair<Nat, Nat>> packed;
  packed.reserve(entries.size());
  for (const auto& [ks, v] : entries)
    packed.emplace_back(cantor_pair(ks.first, ks.second), v);
  PcaCode inner = code_table(packed, fallback);
  return encode(lam_(lam_(capp(inner, pair_(var_(1), var_(0))))));
}

namespace {

// Rough step count for one eq_const evaluation against key k.
std::uint64_t eq_cost(const Nat& k) {
  if (k <= kUnaryEqBound) return 4 * (k.convert_to<std::uint64_t>() + 2);
  auto [a, b] = cantor_unpair(k);
  return eq_cost(a) + eq_cost(b) + 16;
}

}  // namespace

Fuel table_fuel(const std::vector<Nat>& keys) {
  std::uint64_t total = kDefaultFuel;
  for (const auto& k : keys) total += eq_cost(k) + 32;
  return total;
}

PcaCode code_compose_values() {
  static const PcaCode c = encode(
      lam_(lam_(app_(fst_(var_(1)), app_(snd_(var_(1)), var_(0))))));
  return c;
}

}  // namespace peff

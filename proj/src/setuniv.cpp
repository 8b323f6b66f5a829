#include "peff/setuniv.hpp"

#include <algorithm>

namespace peff {

namespace {

constexpr unsigned kTagEmpty = 0;
constexpr unsigned kTagUnit = 1;
constexpr unsigned kTagNat = 2;
constexpr unsigned kTagSum = 3;
constexpr unsigned kTagSigma = 4;
constexpr unsigned kTagPi = 5;
constexpr unsigned kTagList = 6;

constexpr unsigned kMaxDepth = 24;

std::shared_ptr<const SetCode> box(SetCode c) {
  return std::make_shared<const SetCode>(std::move(c));
}

}  // namespace

SetCode SetCode::empty() { return SetCode{Kind::Empty, 0, nullptr, nullptr, 0}; }
SetCode SetCode::unit() { return SetCode{Kind::Unit, 0, nullptr, nullptr, 0}; }
SetCode SetCode::nat(Nat bound) {
  return SetCode{Kind::Nat, std::move(bound), nullptr, nullptr, 0};
}
SetCode SetCode::sum(SetCode l, SetCode r) {
  return SetCode{Kind::Sum, 0, box(std::move(l)), box(std::move(r)), 0};
}
SetCode SetCode::sigma(SetCode base, PcaCode fam) {
  return SetCode{Kind::Sigma, 0, box(std::move(base)), nullptr, std::move(fam)};
}
SetCode SetCode::pi(SetCode base, PcaCode fam) {
  return SetCode{Kind::Pi, 0, box(std::move(base)), nullptr, std::move(fam)};
}
SetCode SetCode::list(SetCode elem, Nat max_len) {
  return SetCode{Kind::List, std::move(max_len), box(std::move(elem)), nullptr, 0};
}

Nat encode_set(const SetCode& c) {
  switch (c.kind) {
    case SetCode::Kind::Empty: return cantor_pair(kTagEmpty, 0);
    case SetCode::Kind::Unit: return cantor_pair(kTagUnit, 0);
    case SetCode::Kind::Nat: return cantor_pair(kTagNat, c.bound);
    case SetCode::Kind::Sum:
      return cantor_pair(kTagSum, cantor_pair(encode_set(*c.l), encode_set(*c.r)));
    case SetCode::Kind::Sigma:
      return cantor_pair(kTagSigma, cantor_pair(encode_set(*c.l), c.fam));
    case SetCode::Kind::Pi:
      return cantor_pair(kTagPi, cantor_pair(encode_set(*c.l), c.fam));
    case SetCode::Kind::List:
      return cantor_pair(kTagList, cantor_pair(encode_set(*c.l), c.bound));
  }
  return 0;
}

namespace {

std::optional<SetCode> decode_code(const Nat& n, unsigned depth) {
  if (depth == 0) return std::nullopt;
  auto [tag, payload] = cantor_unpair(n);
  if (tag == kTagEmpty) return payload == 0 ? std::optional(SetCode::empty()) : std::nullopt;
  if (tag == kTagUnit) return payload == 0 ? std::optional(SetCode::unit()) : std::nullopt;
  if (tag == kTagNat) return SetCode::nat(payload);
  if (tag == kTagSum) {
    auto l = decode_code(cantor_fst(payload), depth - 1);
    auto r = decode_code(cantor_snd(payload), depth - 1);
    if (!l || !r) return std::nullopt;
    return SetCode::sum(std::move(*l), std::move(*r));
  }
  if (tag == kTagSigma || tag == kTagPi) {
    auto base = decode_code(cantor_fst(payload), depth - 1);
    Nat fam = cantor_snd(payload);
    if (!base || !decode(fam)) return std::nullopt;
    return tag == kTagSigma ? SetCode::sigma(std::move(*base), fam)
                            : SetCode::pi(std::move(*base), fam);
  }
  if (tag == kTagList) {
    auto elem = decode_code(cantor_fst(payload), depth - 1);
    if (!elem) return std::nullopt;
    return SetCode::list(std::move(*elem), cantor_snd(payload));
  }
  return std::nullopt;
}

}  // namespace

std::optional<SetCode> decode_set_code(const Nat& n) { return decode_code(n, kMaxDepth); }

bool valid_set_code(const Nat& n) { return decode_set_code(n).has_value(); }

Nat sigma_code(const Nat& base, const PcaCode& fam) {
  return cantor_pair(kTagSigma, cantor_pair(base, fam));
}
Nat pi_code(const Nat& base, const PcaCode& fam) {
  return cantor_pair(kTagPi, cantor_pair(base, fam));
}
Nat sum_code(const Nat& l, const Nat& r) {
  return cantor_pair(kTagSum, cantor_pair(l, r));
}
Nat list_code(const Nat& elem, const Nat& max_len) {
  return cantor_pair(kTagList, cantor_pair(elem, max_len));
}
Nat unit_code() { return cantor_pair(kTagUnit, 0); }
Nat empty_code() { return cantor_pair(kTagEmpty, 0); }
Nat nat_code(const Nat& bound) { return cantor_pair(kTagNat, bound); }

// ---------------------------------------------------------------------------

namespace {

// Decoding is memoized: fiber oracles close over set codes and query them
// per membership check, so repeated decodes must be cheap. A thread-local
// guard bounds recursion through family codes.
std::mutex decode_set_mutex;
std::map<std::pair<Nat, Fuel>, Collection>& decode_set_cache() {
  static std::map<std::pair<Nat, Fuel>, Collection> cache;
  return cache;
}

thread_local unsigned decode_depth = 0;

struct DepthGuard {
  DepthGuard() {
    if (++decode_depth > kMaxDepth) {
      --decode_depth;
      throw Error("invalid-set-code", "set code nests too deeply");
    }
  }
  ~DepthGuard() { --decode_depth; }
};

Collection decode_fam_value(const PcaCode& fam, const Nat& x, Fuel fuel) {
  EvalOutcome out = apply(fam, x, fuel);
  if (!out.is_value())
    throw Error("fam-divergence", "set code family diverges at " + nat_str(x));
  if (!valid_set_code(out.value))
    throw Error("invalid-set-code",
                "family value at " + nat_str(x) + " is not a set code");
  return decode_set(out.value, fuel);
}

bool fam_member(const PcaCode& fam, const Nat& x, const Nat& v, Fuel fuel) {
  EvalOutcome out = apply(fam, x, fuel);
  if (!out.is_value() || !valid_set_code(out.value)) return false;
  try {
    return decode_set(out.value, fuel).member(v);
  } catch (const Error&) {
    return false;
  }
}

Collection decode_at(const SetCode& c, Fuel fuel) {
  switch (c.kind) {
    case SetCode::Kind::Empty:
      return mk_collection("empty", [](const Nat&) { return false; }, {});
    case SetCode::Kind::Unit:
      return mk_collection("unit", [](const Nat& x) { return x == 0; }, {Nat(0)});
    case SetCode::Kind::Nat: {
      std::vector<Nat> sample;
      for (Nat i = 0; i < c.bound && sample.size() < kSampleCap; ++i)
        sample.push_back(i);
      // The oracle accepts every natural; the bound only steers sampling.
      return mk_collection("nat<" + nat_str(c.bound) + ">",
                           [](const Nat&) { return true; }, std::move(sample));
    }
    case SetCode::Kind::Sum: {
      Collection l = decode_set(encode_set(*c.l), fuel);
      Collection r = decode_set(encode_set(*c.r), fuel);
      return coproduct(l, r);
    }
    case SetCode::Kind::Sigma: {
      Collection base = decode_set(encode_set(*c.l), fuel);
      PcaCode fam = c.fam;
      auto bm = base.member;
      std::vector<Nat> sample;
      for (const auto& x : base.sample) {
        Collection fib = decode_fam_value(fam, x, fuel);
        for (const auto& v : fib.sample) sample.push_back(cantor_pair(x, v));
      }
      return mk_collection(
          "sigma",
          [bm, fam, fuel](const Nat& w) {
            Nat x = cantor_fst(w);
            return bm(x) && fam_member(fam, x, cantor_snd(w), fuel);
          },
          cap_samples(std::move(sample)));
    }
    case SetCode::Kind::Pi: {
      Collection base = decode_set(encode_set(*c.l), fuel);
      PcaCode fam = c.fam;
      auto base_sample = base.sample;
      auto lands = [fam, fuel, base_sample](const Nat& n) {
        for (const auto& x : base_sample) {
          EvalOutcome nx = apply(n, x, fuel);
          if (!nx.is_value()) return false;
          if (!fam_member(fam, x, nx.value, fuel)) return false;
        }
        return true;
      };
      std::vector<Nat> sample;
      for (const auto& n : enumerate_unary_codes(4, 48)) {
        if (lands(n)) sample.push_back(n);
        if (sample.size() >= kCodeFiberCap) break;
      }
      return mk_collection("pi", lands, std::move(sample));
    }
    case SetCode::Kind::List: {
      Collection elem = decode_set(encode_set(*c.l), fuel);
      std::size_t max_len = c.bound > 3 ? 3 : nat_to_size(c.bound);
      return list_object(elem, max_len);
    }
  }
  throw Error("invalid-set-code", "unreachable");
}

}  // namespace

Collection decode_set(const Nat& code, Fuel fuel) {
  {
    std::lock_guard<std::mutex> lock(decode_set_mutex);
    auto it = decode_set_cache().find({code, fuel});
    if (it != decode_set_cache().end()) return it->second;
  }
  DepthGuard guard;
  auto c = decode_set_code(code);
  if (!c) throw Error("invalid-set-code", nat_str(code) + " is not a set code");
  Collection col = decode_at(*c, fuel);
  col.name = "set:" + nat_str(code);
  {
    std::lock_guard<std::mutex> lock(decode_set_mutex);
    decode_set_cache().emplace(std::make_pair(code, fuel), col);
  }
  return col;
}

Collection universe() {
  std::vector<Nat> sample = {empty_code(), unit_code(), nat_code(2), nat_code(3),
                             sum_code(unit_code(), unit_code()),
                             list_code(nat_code(2), 2)};
  return mk_collection("U_S", [](const Nat& n) { return valid_set_code(n); },
                       std::move(sample));
}

SetFamily tau(const Collection& a, const TrackedArrow& classifier) {
  if (!carrier_agrees(classifier.dom, a) || !carrier_agrees(classifier.cod, universe()))
    throw Error("classifier-not-set-code", "classifier must map " + a.name +
                                               " into the universe");
  PcaCode code = classifier.code;
  Fuel fuel = classifier.fuel;
  auto am = a.member;
  Family fam = mk_family(
      "tau(" + a.name + ")", a,
      [am, code, fuel](const Nat& x, const Nat& xp) {
        if (!am(x)) return false;
        EvalOutcome out = apply(code, x, fuel);
        if (!out.is_value() || !valid_set_code(out.value)) return false;
        return decode_set(out.value, fuel).member(xp);
      },
      [code, fuel](const Nat& x) -> std::vector<Nat> {
        EvalOutcome out = apply(code, x, fuel);
        if (!out.is_value() || !valid_set_code(out.value)) return {};
        return decode_set(out.value, fuel).sample;
      });
  return SetFamily{std::move(fam), classifier};
}

TrackedArrow classifier_table(const Collection& a,
                              const std::function<Nat(const Nat&)>& code_at,
                              const Nat& fallback) {
  std::vector<std::pair<Nat, Nat>> entries;
  for (const auto& x : a.sample) entries.emplace_back(x, code_at(x));
  return mk_arrow(a, universe(), code_table(entries, fallback), table_fuel(a.sample));
}

TrackedArrow set_I(const SetFamily& s) {
  TrackedArrow arrow = functor_I_obj(s.family);
  arrow.set_witness = std::make_shared<SetFamily>(s);
  return arrow;
}

TrackedArrow set_I_map(const SetFamily& s, const SetFamily& t, const FamilyArrow& f) {
  TrackedArrow arrow = functor_I_map(f);
  // The graph family over Sigma(A,T): at <a,c> the fiber is
  // {<b,0> | b in S(a), {f}(a,b) = c}, coded as a sigma over S(a).
  Collection total = sigma_total(t.family);
  PcaCode s_cl = s.classifier.code;
  Fuel fuel = std::max({s.classifier.fuel, f.fuel, t.classifier.fuel});
  auto code_at = [&, s_cl](const Nat& w) -> Nat {
    Nat a = cantor_fst(w), c = cantor_snd(w);
    EvalOutcome base = apply(s_cl, a, fuel);
    if (!base.is_value()) throw Error("divergence", "classifier at " + nat_str(a));
    std::vector<std::pair<Nat, Nat>> branch;
    for (const auto& b : s.family.fiber_sample(a)) {
      Nat image = family_apply(f, a, b);
      branch.emplace_back(b, image == c ? unit_code() : empty_code());
    }
    PcaCode fam = code_table(branch, empty_code());
    return sigma_code(base.value, fam);
  };
  TrackedArrow classifier = classifier_table(total, code_at, empty_code());
  arrow.set_witness = std::make_shared<SetFamily>(tau(total, classifier));
  return arrow;
}

std::optional<SetFamily> is_set_fibred(const TrackedArrow& f) {
  if (f.set_witness) return *f.set_witness;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Closure of set families under the base structure.

SetFamily set_constant(const Collection& a, const Nat& code) {
  return tau(a, mk_arrow(a, universe(), code_const(code)));
}

SetFamily set_terminal_family(const Collection& a) {
  return set_constant(a, unit_code());
}

SetFamily set_initial_family(const Collection& a) {
  return set_constant(a, empty_code());
}

namespace {

Nat classifier_at(const SetFamily& s, const Nat& x) {
  EvalOutcome out = apply(s.classifier.code, x, s.classifier.fuel);
  if (!out.is_value())
    throw Error("divergence", "set classifier diverges at " + nat_str(x));
  return out.value;
}

}  // namespace

SetFamily set_product(const SetFamily& s, const SetFamily& t) {
  const Collection& a = s.family.base;
  auto code_at = [&](const Nat& x) {
    return sigma_code(classifier_at(s, x), code_const(classifier_at(t, x)));
  };
  return tau(a, classifier_table(a, code_at, sigma_code(unit_code(), code_const(unit_code()))));
}

SetFamily set_coproduct(const SetFamily& s, const SetFamily& t) {
  const Collection& a = s.family.base;
  auto code_at = [&](const Nat& x) {
    return sum_code(classifier_at(s, x), classifier_at(t, x));
  };
  return tau(a, classifier_table(a, code_at, sum_code(empty_code(), empty_code())));
}

SetFamily set_equalizer(const SetFamily& s, const SetFamily& t,
                        const FamilyArrow& f, const FamilyArrow& g) {
  const Collection& a = s.family.base;
  auto code_at = [&](const Nat& x) {
    std::vector<std::pair<Nat, Nat>> branch;
    for (const auto& y : s.family.fiber_sample(x)) {
      bool agree = family_apply(f, x, y) == family_apply(g, x, y);
      branch.emplace_back(y, agree ? unit_code() : empty_code());
    }
    return sigma_code(classifier_at(s, x), code_table(branch, empty_code()));
  };
  return tau(a, classifier_table(a, code_at, empty_code()));
}

SetFamily set_list(const SetFamily& s, const Nat& max_len) {
  const Collection& a = s.family.base;
  auto code_at = [&](const Nat& x) { return list_code(classifier_at(s, x), max_len); };
  return tau(a, classifier_table(a, code_at, list_code(empty_code(), 0)));
}

SetFamily set_weak_exponential(const SetFamily& s, const SetFamily& t) {
  const Collection& a = s.family.base;
  auto code_at = [&](const Nat& x) {
    return pi_code(classifier_at(s, x), code_const(classifier_at(t, x)));
  };
  return tau(a, classifier_table(a, code_at, pi_code(unit_code(), code_const(unit_code()))));
}

}  // namespace peff

#include "peff/colcat.hpp"

#include <algorithm>
#include <set>

namespace peff {

Collection mk_collection(std::string name, std::function<bool(const Nat&)> member,
                         std::vector<Nat> sample) {
  std::vector<Nat> deduped;
  std::set<Nat> seen;
  for (auto& x : sample) {
    if (!member(x))
      throw Error("sample-violates-oracle",
                  name + ": sample point " + nat_str(x) + " fails the oracle");
    if (seen.insert(x).second) deduped.push_back(std::move(x));
  }
  return Collection{std::move(name), std::move(member), std::move(deduped)};
}

bool carrier_agrees(const Collection& a, const Collection& b) {
  for (const auto& x : a.sample)
    if (!b.member(x)) return false;
  for (const auto& x : b.sample)
    if (!a.member(x)) return false;
  return true;
}

std::vector<Nat> cap_samples(std::vector<Nat> xs, std::size_t cap) {
  if (xs.size() > cap) xs.resize(cap);
  return xs;
}

TrackedArrow mk_arrow(Collection dom, Collection cod, PcaCode code, Fuel fuel) {
  for (const auto& x : dom.sample) {
    EvalOutcome out = apply(code, x, fuel);
    if (!out.is_value())
      throw Error("tracking-failure", dom.name + " -> " + cod.name + " at " +
                                          nat_str(x) + ": " + out.describe());
    if (!cod.member(out.value))
      throw Error("tracking-failure", dom.name + " -> " + cod.name + " at " +
                                          nat_str(x) + ": value " + nat_str(out.value) +
                                          " is not in the codomain");
  }
  return TrackedArrow{std::move(dom), std::move(cod), std::move(code), fuel, nullptr};
}

Nat arrow_apply(const TrackedArrow& f, const Nat& x) {
  EvalOutcome out = apply(f.code, x, f.fuel);
  if (!out.is_value())
    throw Error("divergence", "arrow " + f.dom.name + " -> " + f.cod.name + " at " +
                                  nat_str(x) + ": " + out.describe());
  return out.value;
}

TrackedArrow identity(const Collection& a) {
  return mk_arrow(a, a, code_identity());
}

TrackedArrow compose(const TrackedArrow& g, const TrackedArrow& f) {
  if (!carrier_agrees(f.cod, g.dom))
    throw Error("domain-mismatch",
                "compose: " + f.cod.name + " does not agree with " + g.dom.name);
  return mk_arrow(f.dom, g.cod, code_compose(g.code, f.code),
                  std::max(f.fuel, g.fuel) * 2 + kDefaultFuel);
}

bool arrow_eq(const TrackedArrow& f, const TrackedArrow& g) {
  if (!carrier_agrees(f.dom, g.dom) || !carrier_agrees(f.cod, g.cod))
    throw Error("domain-mismatch", "arrow_eq requires matching endpoints");
  for (const auto& x : f.dom.sample) {
    EvalOutcome a = apply(f.code, x, f.fuel);
    EvalOutcome b = apply(g.code, x, g.fuel);
    if (!a.is_value() || !b.is_value())
      throw Error("outcome-divergence", "arrow_eq at " + nat_str(x) + ": " +
                                            a.describe() + " vs " + b.describe());
    if (a.value != b.value) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Collection terminal() {
  return mk_collection("1", [](const Nat& x) { return x == 0; }, {Nat(0)});
}

TrackedArrow bang(const Collection& a) {
  return mk_arrow(a, terminal(), code_const(0));
}

Collection product(const Collection& a, const Collection& b) {
  auto am = a.member;
  auto bm = b.member;
  std::vector<Nat> sample;
  for (const auto& x : a.sample)
    for (const auto& y : b.sample) sample.push_back(cantor_pair(x, y));
  return mk_collection(
      a.name + "*" + b.name,
      [am, bm](const Nat& v) { return am(cantor_fst(v)) && bm(cantor_snd(v)); },
      cap_samples(std::move(sample)));
}

TrackedArrow proj1(const Collection& a, const Collection& b) {
  return mk_arrow(product(a, b), a, code_fst());
}

TrackedArrow proj2(const Collection& a, const Collection& b) {
  return mk_arrow(product(a, b), b, code_snd());
}

TrackedArrow pair_arrow(const TrackedArrow& f, const TrackedArrow& g) {
  if (!carrier_agrees(f.dom, g.dom))
    throw Error("domain-mismatch", "pair_arrow requires a shared domain");
  PcaCode code = encode(lam_(pair_(capp(f.code, var_(0)), capp(g.code, var_(0)))));
  return mk_arrow(f.dom, product(f.cod, g.cod), code,
                  f.fuel + g.fuel + kDefaultFuel);
}

TrackedArrow product_map(const TrackedArrow& f, const TrackedArrow& g) {
  PcaCode code = encode(lam_(
      pair_(capp(f.code, fst_(var_(0))), capp(g.code, snd_(var_(0))))));
  return mk_arrow(product(f.dom, g.dom), product(f.cod, g.cod), code,
                  f.fuel + g.fuel + kDefaultFuel);
}

TrackedArrow diagonal(const Collection& a) {
  return mk_arrow(a, product(a, a), encode(lam_(pair_(var_(0), var_(0)))));
}

Collection initial() {
  return mk_collection("0", [](const Nat&) { return false; }, {});
}

Collection coproduct(const Collection& a, const Collection& b) {
  auto am = a.member;
  auto bm = b.member;
  std::vector<Nat> sample;
  for (const auto& x : a.sample) sample.push_back(cantor_pair(0, x));
  for (const auto& y : b.sample) sample.push_back(cantor_pair(1, y));
  return mk_collection(
      a.name + "+" + b.name,
      [am, bm](const Nat& v) {
        Nat tag = cantor_fst(v);
        if (tag == 0) return am(cantor_snd(v));
        if (tag == 1) return bm(cantor_snd(v));
        return false;
      },
      cap_samples(std::move(sample)));
}

TrackedArrow inj1(const Collection& a, const Collection& b) {
  return mk_arrow(a, coproduct(a, b), encode(lam_(pair_(lit_(0), var_(0)))));
}

TrackedArrow inj2(const Collection& a, const Collection& b) {
  return mk_arrow(b, coproduct(a, b), encode(lam_(pair_(lit_(1), var_(0)))));
}

TrackedArrow copair(const TrackedArrow& f, const TrackedArrow& g) {
  if (!carrier_agrees(f.cod, g.cod))
    throw Error("domain-mismatch", "copair requires a shared codomain");
  // Dispatch on the tag; the payload sits one binder deeper in the 1-branch.
  PcaCode code = encode(lam_(natcase_(fst_(var_(0)), capp(f.code, snd_(var_(0))),
                                      capp(g.code, snd_(var_(1))))));
  return mk_arrow(coproduct(f.dom, g.dom), f.cod, code,
                  f.fuel + g.fuel + kDefaultFuel);
}

Collection equalizer(const TrackedArrow& f, const TrackedArrow& g) {
  if (!carrier_agrees(f.dom, g.dom) || !carrier_agrees(f.cod, g.cod))
    throw Error("domain-mismatch", "equalizer requires parallel arrows");
  auto am = f.dom.member;
  PcaCode fc = f.code, gc = g.code;
  Fuel fuel = std::max(f.fuel, g.fuel);
  auto agree = [fc, gc, fuel](const Nat& x) {
    EvalOutcome a = apply(fc, x, fuel);
    EvalOutcome b = apply(gc, x, fuel);
    return a.is_value() && b.is_value() && a.value == b.value;
  };
  std::vector<Nat> sample;
  for (const auto& x : f.dom.sample)
    if (agree(x)) sample.push_back(x);
  return mk_collection(
      "eq(" + f.dom.name + ")",
      [am, agree](const Nat& x) { return am(x) && agree(x); }, std::move(sample));
}

TrackedArrow equalizer_incl(const TrackedArrow& f, const TrackedArrow& g) {
  return mk_arrow(equalizer(f, g), f.dom, code_identity());
}

TrackedArrow equalizer_mediate(const TrackedArrow& f, const TrackedArrow& g,
                               const TrackedArrow& h) {
  if (!carrier_agrees(h.cod, f.dom))
    throw Error("domain-mismatch", "mediator must land in the parallel pair's domain");
  for (const auto& x : h.dom.sample) {
    Nat hx = arrow_apply(h, x);
    EvalOutcome a = apply(f.code, hx, f.fuel);
    EvalOutcome b = apply(g.code, hx, g.fuel);
    if (!a.is_value() || !b.is_value() || a.value != b.value)
      throw Error("cone-mismatch", "arrow does not equalize at " + nat_str(x));
  }
  return mk_arrow(h.dom, equalizer(f, g), h.code, h.fuel);
}

// ---------------------------------------------------------------------------
// Lists.

Nat list_nil_value() { return cantor_pair(0, 0); }

Nat list_cons_value(const Nat& head, const Nat& tail) {
  return cantor_pair(1, cantor_pair(head, tail));
}

std::optional<std::vector<Nat>> list_decode(const Nat& v,
                                            const std::function<bool(const Nat&)>& elem) {
  std::vector<Nat> out;
  Nat cur = v;
  for (;;) {
    Nat tag = cantor_fst(cur);
    if (tag == 0) {
      if (cantor_snd(cur) != 0) return std::nullopt;
      return out;
    }
    if (tag != 1) return std::nullopt;
    Nat payload = cantor_snd(cur);
    Nat head = cantor_fst(payload);
    if (!elem(head)) return std::nullopt;
    out.push_back(head);
    cur = cantor_snd(payload);
  }
}

Nat list_encode(const std::vector<Nat>& xs) {
  Nat v = list_nil_value();
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) v = list_cons_value(*it, v);
  return v;
}

Collection list_object(const Collection& a, std::size_t max_len) {
  auto am = a.member;
  std::vector<Nat> sample{list_nil_value()};
  std::vector<std::vector<Nat>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Nat>> next;
    for (const auto& xs : layer)
      for (const auto& x : a.sample) {
        auto ys = xs;
        ys.push_back(x);
        sample.push_back(list_encode(ys));
        next.push_back(std::move(ys));
        if (sample.size() >= kSampleCap) break;
      }
    layer = std::move(next);
    if (sample.size() >= kSampleCap) break;
  }
  return mk_collection(
      "list(" + a.name + ")",
      [am](const Nat& v) { return list_decode(v, am).has_value(); },
      cap_samples(std::move(sample)));
}

TrackedArrow list_nil_arrow(const Collection& a) {
  return mk_arrow(terminal(), list_object(a), code_const(list_nil_value()));
}

TrackedArrow list_cons_arrow(const Collection& a) {
  // <h,t> |-> <1,<h,t>>
  return mk_arrow(product(a, list_object(a)), list_object(a),
                  encode(lam_(pair_(lit_(1), var_(0)))));
}

TrackedArrow list_fold(const Collection& a, const Collection& b, const Nat& z,
                       const PcaCode& step, Fuel fuel) {
  if (!b.member(z)) throw Error("tracking-failure", "fold seed is not in the target");
  // fix self. lam x. natcase (fst x) z ({step}(head)(self tail))
  // Binder depths inside the successor branch: pred=0, x=1, self=2.
  TermPtr body = natcase_(
      fst_(var_(0)), lit_(z),
      app_(app_(lit_(step), fst_(snd_(var_(1)))), app_(var_(2), snd_(snd_(var_(1))))));
  PcaCode code = encode(fix_(lam_(body)));
  return mk_arrow(list_object(a), b, code, fuel);
}

// ---------------------------------------------------------------------------
// Weak exponentials.

namespace {

std::vector<Nat> harvest_tracking_codes(const Collection& a, const Collection& b,
                                        const std::vector<PcaCode>& seeds) {
  auto tracks = [&](const PcaCode& n) {
    for (const auto& x : a.sample) {
      EvalOutcome out = apply(n, x, kDefaultFuel);
      if (!out.is_value() || !b.member(out.value)) return false;
    }
    return true;
  };
  std::vector<Nat> sample;
  std::set<Nat> seen;
  for (const auto& n : seeds)
    if (tracks(n) && seen.insert(n).second) sample.push_back(n);
  for (const auto& n : enumerate_unary_codes(6)) {
    if (sample.size() >= 64) break;
    if (tracks(n) && seen.insert(n).second) sample.push_back(n);
  }
  return sample;
}

}  // namespace

Collection weak_exponential(const Collection& a, const Collection& b,
                            const std::vector<PcaCode>& seeds) {
  auto bm = b.member;
  auto sample_points = a.sample;
  return mk_collection(
      a.name + "=>" + b.name,
      [sample_points, bm](const Nat& n) {
        for (const auto& x : sample_points) {
          EvalOutcome out = apply(n, x, kDefaultFuel);
          if (!out.is_value() || !bm(out.value)) return false;
        }
        return true;
      },
      harvest_tracking_codes(a, b, seeds));
}

TrackedArrow weak_eval(const Collection& a, const Collection& b,
                       const std::vector<PcaCode>& seeds) {
  // <n,x> |-> {n}(x)
  PcaCode code = encode(lam_(app_(fst_(var_(0)), snd_(var_(0)))));
  return mk_arrow(product(weak_exponential(a, b, seeds), a), b, code,
                  4 * kDefaultFuel);
}

TrackedArrow weak_transpose(const Collection& x, const Collection& a,
                            const Collection& b, const TrackedArrow& f,
                            const std::vector<PcaCode>& seeds) {
  if (!carrier_agrees(f.dom, product(x, a)) || !carrier_agrees(f.cod, b))
    throw Error("domain-mismatch", "weak_transpose expects f : X x A -> B");
  std::vector<std::pair<Nat, Nat>> entries;
  std::vector<PcaCode> produced = seeds;
  for (const auto& p : x.sample) {
    // The section at p is the literal code of lam a. {f}(<p, a>).
    PcaCode section = encode(lam_(capp(f.code, pair_(lit_(p), var_(0)))));
    entries.emplace_back(p, section);
    produced.push_back(section);
  }
  Nat fallback = entries.empty() ? code_const(0) : entries.front().second;
  PcaCode code = code_table(entries, fallback);
  return mk_arrow(x, weak_exponential(a, b, produced), code, table_fuel(x.sample));
}

}  // namespace peff

#include "peff/fam.hpp"

#include <algorithm>

namespace peff {

namespace {

std::vector<Nat> cap_fiber(std::vector<Nat> xs) {
  if (xs.size() > kFiberCap) xs.resize(kFiberCap);
  return xs;
}

// {f}(x) for use inside oracles: divergence out of samples reads as a
// negative answer rather than an error.
std::optional<Nat> try_apply(const PcaCode& code, const Nat& x, Fuel fuel) {
  EvalOutcome out = apply(code, x, fuel);
  if (!out.is_value()) return std::nullopt;
  return out.value;
}

}  // namespace

Family mk_family(std::string name, Collection base,
                 std::function<bool(const Nat&, const Nat&)> fiber_member,
                 std::function<std::vector<Nat>(const Nat&)> fiber_sample) {
  for (const auto& x : base.sample) {
    for (const auto& xp : fiber_sample(x)) {
      if (!fiber_member(x, xp))
        throw Error("fiber-sample-violates-oracle",
                    name + ": " + nat_str(xp) + " at base point " + nat_str(x));
    }
  }
  return Family{std::move(name), std::move(base), std::move(fiber_member),
                std::move(fiber_sample)};
}

Family constant_family(const Collection& base, const Collection& fiber) {
  auto bm = base.member;
  auto fm = fiber.member;
  auto fs = fiber.sample;
  return mk_family(
      fiber.name + "^" + base.name, base,
      [bm, fm](const Nat& x, const Nat& xp) { return bm(x) && fm(xp); },
      [fs](const Nat&) { return fs; });
}

Family constant_unit_family(const Collection& base) {
  return constant_family(base, terminal());
}

bool family_agrees(const Family& c, const Family& d) {
  if (!carrier_agrees(c.base, d.base)) return false;
  for (const auto& x : c.base.sample) {
    for (const auto& xp : c.fiber_sample(x))
      if (!d.fiber_member(x, xp)) return false;
    for (const auto& xp : d.fiber_sample(x))
      if (!c.fiber_member(x, xp)) return false;
  }
  return true;
}

FamilyArrow mk_family_arrow(Family dom, Family cod, PcaCode code, Fuel fuel) {
  if (!carrier_agrees(dom.base, cod.base))
    throw Error("domain-mismatch", "family arrow requires a shared base");
  for (const auto& x : dom.base.sample) {
    for (const auto& xp : dom.fiber_sample(x)) {
      EvalOutcome out = apply2(code, x, xp, fuel);
      if (!out.is_value())
        throw Error("tracking-failure", dom.name + " -> " + cod.name + " at (" +
                                            nat_str(x) + ", " + nat_str(xp) +
                                            "): " + out.describe());
      if (!cod.fiber_member(x, out.value))
        throw Error("tracking-failure", dom.name + " -> " + cod.name + " at (" +
                                            nat_str(x) + ", " + nat_str(xp) +
                                            "): lands outside the fiber");
    }
  }
  return FamilyArrow{std::move(dom), std::move(cod), std::move(code), fuel};
}

Nat family_apply(const FamilyArrow& f, const Nat& x, const Nat& xp) {
  EvalOutcome out = apply2(f.code, x, xp, f.fuel);
  if (!out.is_value())
    throw Error("divergence", "family arrow at (" + nat_str(x) + ", " + nat_str(xp) +
                                  "): " + out.describe());
  return out.value;
}

FamilyArrow fam_identity(const Family& c) {
  return mk_family_arrow(c, c, code_fam_identity());
}

FamilyArrow fam_compose(const FamilyArrow& g, const FamilyArrow& f) {
  if (!family_agrees(f.cod, g.dom))
    throw Error("domain-mismatch", "fam_compose: fibers do not agree");
  return mk_family_arrow(f.dom, g.cod, code_fam_compose(g.code, f.code),
                         2 * std::max(f.fuel, g.fuel) + kDefaultFuel);
}

bool fam_arrow_eq(const FamilyArrow& f, const FamilyArrow& g) {
  for (const auto& x : f.dom.base.sample) {
    for (const auto& xp : f.dom.fiber_sample(x)) {
      EvalOutcome a = apply2(f.code, x, xp, f.fuel);
      EvalOutcome b = apply2(g.code, x, xp, g.fuel);
      if (!a.is_value() || !b.is_value())
        throw Error("outcome-divergence", "fam_arrow_eq at (" + nat_str(x) + ", " +
                                              nat_str(xp) + ")");
      if (a.value != b.value) return false;
    }
  }
  return true;
}

Family fam_product(const Family& b, const Family& c) {
  auto bm = b.fiber_member;
  auto cm = c.fiber_member;
  auto bs = b.fiber_sample;
  auto cs = c.fiber_sample;
  return mk_family(
      b.name + "*" + c.name, b.base,
      [bm, cm](const Nat& x, const Nat& w) {
        return bm(x, cantor_fst(w)) && cm(x, cantor_snd(w));
      },
      [bs, cs](const Nat& x) {
        std::vector<Nat> out;
        for (const auto& u : bs(x))
          for (const auto& v : cs(x)) out.push_back(cantor_pair(u, v));
        return cap_fiber(std::move(out));
      });
}

FamilyArrow fam_proj1(const Family& b, const Family& c) {
  return mk_family_arrow(fam_product(b, c), b, encode(lam_(lam_(fst_(var_(0))))));
}

FamilyArrow fam_proj2(const Family& b, const Family& c) {
  return mk_family_arrow(fam_product(b, c), c, encode(lam_(lam_(snd_(var_(0))))));
}

FamilyArrow fam_pair(const FamilyArrow& f, const FamilyArrow& g) {
  PcaCode code = encode(lam_(lam_(pair_(capp2(f.code, var_(1), var_(0)),
                                        capp2(g.code, var_(1), var_(0))))));
  return mk_family_arrow(f.dom, fam_product(f.cod, g.cod), code,
                         f.fuel + g.fuel + kDefaultFuel);
}

FamilyArrow fam_diagonal(const Family& b) {
  return mk_family_arrow(b, fam_product(b, b),
                         encode(lam_(lam_(pair_(var_(0), var_(0))))));
}

Family fam_coproduct(const Family& b, const Family& c) {
  auto bm = b.fiber_member;
  auto cm = c.fiber_member;
  auto bs = b.fiber_sample;
  auto cs = c.fiber_sample;
  return mk_family(
      b.name + "+" + c.name, b.base,
      [bm, cm](const Nat& x, const Nat& w) {
        Nat tag = cantor_fst(w);
        if (tag == 0) return bm(x, cantor_snd(w));
        if (tag == 1) return cm(x, cantor_snd(w));
        return false;
      },
      [bs, cs](const Nat& x) {
        std::vector<Nat> out;
        for (const auto& u : bs(x)) out.push_back(cantor_pair(0, u));
        for (const auto& v : cs(x)) out.push_back(cantor_pair(1, v));
        return cap_fiber(std::move(out));
      });
}

FamilyArrow fam_inj1(const Family& b, const Family& c) {
  return mk_family_arrow(b, fam_coproduct(b, c),
                         encode(lam_(lam_(pair_(lit_(0), var_(0))))));
}

FamilyArrow fam_inj2(const Family& b, const Family& c) {
  return mk_family_arrow(c, fam_coproduct(b, c),
                         encode(lam_(lam_(pair_(lit_(1), var_(0))))));
}

FamilyArrow fam_copair(const FamilyArrow& f, const FamilyArrow& g) {
  // Dispatch on the tag; the point variable shifts under the 1-branch binder.
  PcaCode code = encode(lam_(lam_(natcase_(
      fst_(var_(0)), capp2(f.code, var_(1), snd_(var_(0))),
      capp2(g.code, var_(2), snd_(var_(1)))))));
  return mk_family_arrow(fam_coproduct(f.dom, g.dom), f.cod, code,
                         f.fuel + g.fuel + kDefaultFuel);
}

// ---------------------------------------------------------------------------
// Substitution and its adjoints.

Family subst(const TrackedArrow& f, const Family& c) {
  auto am = f.dom.member;
  auto cm = c.fiber_member;
  auto cs = c.fiber_sample;
  PcaCode code = f.code;
  Fuel fuel = f.fuel;
  return mk_family(
      c.name + "[" + f.dom.name + "]", f.dom,
      [am, cm, code, fuel](const Nat& x, const Nat& xp) {
        if (!am(x)) return false;
        auto y = try_apply(code, x, fuel);
        return y && cm(*y, xp);
      },
      [cs, code, fuel](const Nat& x) -> std::vector<Nat> {
        auto y = try_apply(code, x, fuel);
        if (!y) return {};
        return cs(*y);
      });
}

FamilyArrow subst_map(const TrackedArrow& f, const FamilyArrow& g) {
  // Lx.Lx'.{k}({n}(x), x')
  PcaCode code = encode(
      lam_(lam_(app_(app_(lit_(g.code), capp(f.code, var_(1))), var_(0)))));
  return mk_family_arrow(subst(f, g.dom), subst(f, g.cod), code,
                         f.fuel + g.fuel + kDefaultFuel);
}

Family sigma_along(const TrackedArrow& f, const Family& c) {
  auto cm = c.fiber_member;
  auto cs = c.fiber_sample;
  auto dom_sample = f.dom.sample;
  auto dm = f.dom.member;
  PcaCode code = f.code;
  Fuel fuel = f.fuel;
  return mk_family(
      "Sigma_" + f.dom.name + "(" + c.name + ")", f.cod,
      [cm, code, fuel, dm](const Nat& y, const Nat& w) {
        Nat x = cantor_fst(w);
        if (!dm(x)) return false;
        auto fy = try_apply(code, x, fuel);
        return fy && *fy == y && cm(x, cantor_snd(w));
      },
      [cs, code, fuel, dom_sample](const Nat& y) {
        std::vector<Nat> out;
        for (const auto& x : dom_sample) {
          auto fy = try_apply(code, x, fuel);
          if (!fy || *fy != y) continue;
          for (const auto& v : cs(x)) out.push_back(cantor_pair(x, v));
        }
        return cap_fiber(std::move(out));
      });
}

FamilyArrow sigma_along_map(const TrackedArrow& f, const FamilyArrow& g) {
  // Lx.Lx'. pair(p1 x', {m}(p1 x', p2 x'))
  PcaCode code = encode(lam_(lam_(
      pair_(fst_(var_(0)), capp2(g.code, fst_(var_(0)), snd_(var_(0)))))));
  return mk_family_arrow(sigma_along(f, g.dom), sigma_along(f, g.cod), code,
                         f.fuel + g.fuel + kDefaultFuel);
}

FamilyArrow sigma_unit(const TrackedArrow& f, const Family& c) {
  PcaCode code = encode(lam_(lam_(pair_(var_(1), var_(0)))));
  return mk_family_arrow(c, subst(f, sigma_along(f, c)), code,
                         2 * f.fuel + kDefaultFuel);
}

FamilyArrow sigma_counit(const TrackedArrow& f, const Family& d) {
  PcaCode code = encode(lam_(lam_(snd_(var_(0)))));
  return mk_family_arrow(sigma_along(f, subst(f, d)), d, code,
                         2 * f.fuel + kDefaultFuel);
}

Family weak_pi_along(const TrackedArrow& f, const Family& c,
                     const std::vector<PcaCode>& seeds) {
  auto cm = c.fiber_member;
  auto cs = c.fiber_sample;
  auto dom_sample = f.dom.sample;
  PcaCode code = f.code;
  Fuel fuel = f.fuel;
  auto in_fiber = [cm, code, fuel, dom_sample](const Nat& y, const Nat& n) {
    for (const auto& x : dom_sample) {
      auto fy = try_apply(code, x, fuel);
      if (!fy || *fy != y) continue;
      auto v = try_apply(n, x, 4 * kDefaultFuel);
      if (!v || !cm(x, *v)) return false;
    }
    return true;
  };
  // Registered seeds (fixture transposes) take precedence over the
  // enumerated pool when the harvest cap bites.
  auto pool = seeds;
  for (auto& n : enumerate_unary_codes(5, 128)) pool.push_back(std::move(n));
  return mk_family(
      "Pi_" + f.dom.name + "(" + c.name + ")", f.cod,
      [in_fiber, am = f.cod.member](const Nat& y, const Nat& n) {
        return am(y) && in_fiber(y, n);
      },
      [in_fiber, pool](const Nat& y) {
        std::vector<Nat> out;
        for (const auto& n : pool) {
          if (in_fiber(y, n)) out.push_back(n);
          if (out.size() >= kCodeFiberCap) break;
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      });
}

FamilyArrow weak_pi_transpose(const TrackedArrow& f, const Family& c,
                              const Family& d, const FamilyArrow& g) {
  // For each (y, d-value) in the samples the transpose yields the literal
  // code of lam x. {g}(x, d); dispatch is a finite table.
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  std::vector<PcaCode> produced;
  std::vector<Nat> keys;
  for (const auto& y : d.base.sample) {
    for (const auto& dv : d.fiber_sample(y)) {
      PcaCode section = encode(lam_(capp2(g.code, var_(0), lit_(dv))));
      entries.push_back({{y, dv}, section});
      produced.push_back(section);
      keys.push_back(cantor_pair(y, dv));
    }
  }
  PcaCode code = code_table2(entries, entries.empty() ? Nat(0) : entries.front().second);
  return mk_family_arrow(d, weak_pi_along(f, c, produced), code, table_fuel(keys));
}

// ---------------------------------------------------------------------------
// Total spaces, the slice equivalence, and currying.

Collection sigma_total(const Family& b) {
  auto am = b.base.member;
  auto bm = b.fiber_member;
  std::vector<Nat> sample;
  for (const auto& x : b.base.sample)
    for (const auto& v : b.fiber_sample(x)) sample.push_back(cantor_pair(x, v));
  return mk_collection(
      "Sigma(" + b.base.name + "," + b.name + ")",
      [am, bm](const Nat& w) {
        return am(cantor_fst(w)) && bm(cantor_fst(w), cantor_snd(w));
      },
      cap_samples(std::move(sample)));
}

TrackedArrow functor_I_obj(const Family& b) {
  return mk_arrow(sigma_total(b), b.base, code_fst());
}

TrackedArrow functor_I_map(const FamilyArrow& n) {
  // Lx. pair(p1 x, {n}(p1 x, p2 x))
  PcaCode code = encode(lam_(
      pair_(fst_(var_(0)), capp2(n.code, fst_(var_(0)), snd_(var_(0))))));
  return mk_arrow(sigma_total(n.dom), sigma_total(n.cod), code,
                  n.fuel + kDefaultFuel);
}

Family functor_J_obj(const TrackedArrow& b) {
  auto bm = b.dom.member;
  auto bs = b.dom.sample;
  PcaCode code = b.code;
  Fuel fuel = b.fuel;
  return mk_family(
      "J(" + b.dom.name + ")", b.cod,
      [bm, code, fuel](const Nat& x, const Nat& xp) {
        if (!bm(xp)) return false;
        auto y = try_apply(code, xp, fuel);
        return y && *y == x;
      },
      [bs, code, fuel](const Nat& x) {
        std::vector<Nat> out;
        for (const auto& xp : bs) {
          auto y = try_apply(code, xp, fuel);
          if (y && *y == x) out.push_back(xp);
        }
        return cap_fiber(std::move(out));
      });
}

FamilyArrow functor_J_map(const TrackedArrow& b, const TrackedArrow& bp,
                          const TrackedArrow& h) {
  if (!arrow_eq(compose(bp, h), b))
    throw Error("slice-mismatch", "J expects a commuting slice triangle");
  // Lx.Lx'.{h}(x')
  PcaCode code = encode(lam_(lam_(capp(h.code, var_(0)))));
  return mk_family_arrow(functor_J_obj(b), functor_J_obj(bp), code,
                         h.fuel + kDefaultFuel);
}

TrackedArrow sigma_map(const TrackedArrow& f, const Family& c) {
  // Lx. pair({n}(p1 x), p2 x)
  PcaCode code = encode(lam_(pair_(capp(f.code, fst_(var_(0))), snd_(var_(0)))));
  return mk_arrow(sigma_total(subst(f, c)), sigma_total(c), code,
                  f.fuel + kDefaultFuel);
}

TrackedArrow sigma_map_mediator(const TrackedArrow& f, const Family& c,
                                const TrackedArrow& q, const TrackedArrow& r) {
  if (!arrow_eq(compose(f, q), compose(functor_I_obj(c), r)))
    throw Error("cone-mismatch", "cone does not commute with the pullback square");
  // Lx. pair({q}(x), p2({r}(x)))
  PcaCode code = encode(
      lam_(pair_(capp(q.code, var_(0)), snd_(capp(r.code, var_(0))))));
  return mk_arrow(q.dom, sigma_total(subst(f, c)), code,
                  q.fuel + r.fuel + kDefaultFuel);
}

Family sigma_over(const Family& b, const Family& c) {
  // Sigma_{p1}(C): fiber at a holds pairs <s, cv> with s = <a, bv> in
  // Sigma(A,B) and cv in C(s).
  Collection total = sigma_total(b);
  auto tm = total.member;
  auto cm = c.fiber_member;
  auto cs = c.fiber_sample;
  auto bs = b.fiber_sample;
  return mk_family(
      "Sigma^" + b.base.name + "(" + b.name + "," + c.name + ")", b.base,
      [tm, cm](const Nat& a, const Nat& w) {
        Nat s = cantor_fst(w);
        return tm(s) && cantor_fst(s) == a && cm(s, cantor_snd(w));
      },
      [bs, cs](const Nat& a) {
        std::vector<Nat> out;
        for (const auto& bv : bs(a)) {
          Nat s = cantor_pair(a, bv);
          for (const auto& cv : cs(s)) out.push_back(cantor_pair(s, cv));
        }
        return cap_fiber(std::move(out));
      });
}

FamilyArrow sigma_over_proj(const Family& b, const Family& c) {
  // The paper's p1^{A,Sigma} = Lx.Lx'.{p2}({p1}(x')).
  PcaCode code = encode(lam_(lam_(snd_(fst_(var_(0))))));
  return mk_family_arrow(sigma_over(b, c), b, code);
}

FamilyArrow sigma_over_map(const FamilyArrow& f, const Family& c) {
  // Lx.Lx'. pair(pair(x, {n_f}(x, p2(p1 x'))), p2 x')
  PcaCode code = encode(lam_(lam_(pair_(
      pair_(var_(1), capp2(f.code, var_(1), snd_(fst_(var_(0))))),
      snd_(var_(0))))));
  Family dom = sigma_over(f.dom, subst(functor_I_map(f), c));
  Family cod = sigma_over(f.cod, c);
  return mk_family_arrow(std::move(dom), std::move(cod), code,
                         2 * f.fuel + kDefaultFuel);
}

TrackedArrow cur_iso(const Family& b, const Family& c) {
  // Lx. pair(p1(p1 x), x)
  PcaCode code = encode(lam_(pair_(fst_(fst_(var_(0))), var_(0))));
  return mk_arrow(sigma_total(c), sigma_total(sigma_over(b, c)), code);
}

TrackedArrow cur_inv(const Family& b, const Family& c) {
  PcaCode code = encode(lam_(snd_(var_(0))));
  return mk_arrow(sigma_total(sigma_over(b, c)), sigma_total(c), code);
}

}  // namespace peff

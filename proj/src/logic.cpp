#include "peff/logic.hpp"

#include <algorithm>

namespace peff {

RProp mk_prop(std::string name, Family carrier) {
  return RProp{std::move(name), std::move(carrier), false, nullptr, 0, 0};
}

RProp mk_small_prop(std::string name, const SetFamily& presentation) {
  RProp p;
  p.name = std::move(name);
  p.carrier = presentation.family;
  p.small = true;
  p.small_witness = std::make_shared<SetFamily>(presentation);
  p.to_small = code_fam_identity();
  p.from_small = code_fam_identity();
  return p;
}

bool check_leq(const OrderWitness& w) {
  for (const auto& x : w.from.base().sample) {
    for (const auto& p : w.from.carrier.fiber_sample(x)) {
      EvalOutcome out = apply2(w.code, x, p, w.fuel);
      if (!out.is_value())
        throw Error("divergence", "order witness at (" + nat_str(x) + ", " +
                                      nat_str(p) + "): " + out.describe());
      if (!w.to.carrier.fiber_member(x, out.value)) return false;
    }
  }
  return true;
}

namespace {

// Bodies over two bound variables (point = var 1, proof = var 0).
std::vector<TermPtr> witness_bodies(std::size_t nodes) {
  std::vector<TermPtr> out;
  if (nodes == 0) return out;
  if (nodes == 1) {
    out.push_back(var_(0));
    out.push_back(var_(1));
    out.push_back(lit_(0));
    out.push_back(lit_(1));
    return out;
  }
  for (const auto& t : witness_bodies(nodes - 1)) {
    out.push_back(succ_(t));
    out.push_back(fst_(t));
    out.push_back(snd_(t));
  }
  for (std::size_t left = 1; left + 1 < nodes; ++left)
    for (const auto& l : witness_bodies(left))
      for (const auto& r : witness_bodies(nodes - 1 - left))
        out.push_back(pair_(l, r));
  return out;
}

}  // namespace

std::optional<OrderWitness> search_leq(const RProp& p, const RProp& q,
                                       std::size_t size_bound) {
  for (std::size_t n = 1; n <= size_bound; ++n) {
    for (const auto& body : witness_bodies(n)) {
      OrderWitness cand{p, q, encode(lam_(lam_(body))), kDefaultFuel};
      try {
        if (check_leq(cand)) return cand;
      } catch (const Error&) {
        // Divergent candidates are skipped.
      }
    }
  }
  return std::nullopt;
}

bool check_iso(const OrderIso& iso) { return check_leq(iso.fwd) && check_leq(iso.bwd); }

// ---------------------------------------------------------------------------
// Heyting structure.

RProp top_prop(const Collection& a) {
  return mk_small_prop("true", set_terminal_family(a));
}

RProp bottom_prop(const Collection& a) {
  return mk_small_prop("false", set_initial_family(a));
}

RProp and_prop(const RProp& p, const RProp& q) {
  RProp out;
  out.name = "(" + p.name + " & " + q.name + ")";
  out.carrier = fam_product(p.carrier, q.carrier);
  if (p.small && q.small) {
    out.small = true;
    out.small_witness = std::make_shared<SetFamily>(
        set_product(*p.small_witness, *q.small_witness));
    out.to_small = encode(lam_(lam_(
        pair_(capp2(p.to_small, var_(1), fst_(var_(0))),
              capp2(q.to_small, var_(1), snd_(var_(0)))))));
    out.from_small = encode(lam_(lam_(
        pair_(capp2(p.from_small, var_(1), fst_(var_(0))),
              capp2(q.from_small, var_(1), snd_(var_(0)))))));
  }
  return out;
}

RProp or_prop(const RProp& p, const RProp& q) {
  RProp out;
  out.name = "(" + p.name + " | " + q.name + ")";
  out.carrier = fam_coproduct(p.carrier, q.carrier);
  if (p.small && q.small) {
    out.small = true;
    out.small_witness = std::make_shared<SetFamily>(
        set_coproduct(*p.small_witness, *q.small_witness));
    auto tagged = [](const PcaCode& on0, const PcaCode& on1) {
      // Lx.Lw. natcase (fst w) <0, {on0}(x, snd w)> <1, {on1}(x, snd w)>
      return encode(lam_(lam_(natcase_(
          fst_(var_(0)), pair_(lit_(0), capp2(on0, var_(1), snd_(var_(0)))),
          pair_(lit_(1), capp2(on1, var_(2), snd_(var_(1))))))));
    };
    out.to_small = tagged(p.to_small, q.to_small);
    out.from_small = tagged(p.from_small, q.from_small);
  }
  return out;
}

namespace {

Family implies_family(const Family& p, const Family& q) {
  auto pm = p.fiber_member;
  auto qm = q.fiber_member;
  auto ps = p.fiber_sample;
  auto qs = q.fiber_sample;
  auto transforms = [pm, qm, ps](const Nat& x, const Nat& n) {
    for (const auto& pp : ps(x)) {
      EvalOutcome out = apply(n, pp, 4 * kDefaultFuel);
      if (!out.is_value() || !qm(x, out.value)) return false;
    }
    return true;
  };
  auto pool = enumerate_unary_codes(3, 32);
  return mk_family(
      "(" + p.name + " -> " + q.name + ")", p.base,
      [transforms, bm = p.base.member](const Nat& x, const Nat& n) {
        return bm(x) && transforms(x, n);
      },
      [transforms, qs, pool](const Nat& x) {
        std::vector<Nat> out;
        for (const auto& qq : qs(x)) out.push_back(code_const(qq));
        for (const auto& n : pool)
          if (transforms(x, n)) out.push_back(n);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.size() > kCodeFiberCap) out.resize(kCodeFiberCap);
        return out;
      });
}

Nat must_value(const PcaCode& code, const Nat& x, const Nat& y, Fuel fuel) {
  EvalOutcome out = apply2(code, x, y, fuel);
  if (!out.is_value())
    throw Error("divergence", "realizer diverged at (" + nat_str(x) + ", " +
                                  nat_str(y) + ")");
  return out.value;
}

}  // namespace

namespace {

bool literal_presentation(const RProp& p) {
  return p.small && p.to_small == code_fam_identity() &&
         p.from_small == code_fam_identity();
}

constexpr std::size_t kConversionCap = 8;

}  // namespace

RProp implies_prop(const RProp& p, const RProp& q) {
  RProp out;
  out.name = "(" + p.name + " -> " + q.name + ")";
  out.carrier = implies_family(p.carrier, q.carrier);
  if (p.small && q.small) {
    out.small = true;
    auto p_cl = p.small_witness->classifier;
    auto q_cl = q.small_witness->classifier;
    const Collection& base = p.base();
    auto code_at = [&](const Nat& x) {
      return pi_code(arrow_apply(p_cl, x), code_const(arrow_apply(q_cl, x)));
    };
    out.small_witness = std::make_shared<SetFamily>(
        tau(base, classifier_table(base, code_at,
                                   pi_code(unit_code(), code_const(unit_code())))));
    if (literal_presentation(p) && literal_presentation(q)) {
      // The carrier oracle and the pi-code oracle coincide when the inputs
      // are presented by their own decode fibers.
      out.to_small = code_fam_identity();
      out.from_small = code_fam_identity();
    } else {
      // A carrier transformer n becomes Ly. to_q(x, {n}(from_p(x, y))) and
      // conversely; dispatch is a capped finite table.
      std::vector<std::pair<std::pair<Nat, Nat>, Nat>> to_entries, from_entries;
      std::vector<Nat> keys;
      for (const auto& x : base.sample) {
        auto carrier_fib = out.carrier.fiber_sample(x);
        if (carrier_fib.size() > kConversionCap) carrier_fib.resize(kConversionCap);
        for (const auto& n : carrier_fib) {
          PcaCode conv = encode(lam_(capp2(q.to_small, lit_(x),
                                           capp(n, capp2(p.from_small, lit_(x), var_(0))))));
          to_entries.push_back({{x, n}, conv});
          keys.push_back(cantor_pair(x, n));
        }
        auto witness_fib = out.small_witness->family.fiber_sample(x);
        if (witness_fib.size() > kConversionCap) witness_fib.resize(kConversionCap);
        for (const auto& m : witness_fib) {
          PcaCode conv = encode(lam_(capp2(q.from_small, lit_(x),
                                           capp(m, capp2(p.to_small, lit_(x), var_(0))))));
          from_entries.push_back({{x, m}, conv});
          keys.push_back(cantor_pair(x, m));
        }
      }
      out.to_small = code_table2(to_entries, code_const(0));
      out.from_small = code_table2(from_entries, code_const(0));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical witnesses.

namespace {

OrderWitness witness(RProp from, RProp to, PcaCode code, Fuel fuel = kDefaultFuel) {
  return OrderWitness{std::move(from), std::move(to), std::move(code), fuel};
}

}  // namespace

OrderWitness leq_refl(const RProp& p) {
  return witness(p, p, code_fam_identity());
}

OrderWitness leq_bottom(const RProp& p) {
  return witness(bottom_prop(p.base()), p, code_fam_identity());
}

OrderWitness leq_top(const RProp& p) {
  return witness(p, top_prop(p.base()), encode(lam_(lam_(lit_(0)))));
}

OrderWitness and_proj1(const RProp& p, const RProp& q) {
  return witness(and_prop(p, q), p, encode(lam_(lam_(fst_(var_(0))))));
}

OrderWitness and_proj2(const RProp& p, const RProp& q) {
  return witness(and_prop(p, q), q, encode(lam_(lam_(snd_(var_(0))))));
}

OrderWitness and_intro(const OrderWitness& pw, const OrderWitness& qw) {
  PcaCode code = encode(lam_(lam_(pair_(capp2(pw.code, var_(1), var_(0)),
                                        capp2(qw.code, var_(1), var_(0))))));
  return witness(pw.from, and_prop(pw.to, qw.to), code, pw.fuel + qw.fuel);
}

OrderWitness or_inj1(const RProp& p, const RProp& q) {
  return witness(p, or_prop(p, q), encode(lam_(lam_(pair_(lit_(0), var_(0))))));
}

OrderWitness or_inj2(const RProp& p, const RProp& q) {
  return witness(q, or_prop(p, q), encode(lam_(lam_(pair_(lit_(1), var_(0))))));
}

OrderWitness or_elim(const OrderWitness& pw, const OrderWitness& qw) {
  PcaCode code = encode(lam_(lam_(natcase_(
      fst_(var_(0)), capp2(pw.code, var_(1), snd_(var_(0))),
      capp2(qw.code, var_(2), snd_(var_(1)))))));
  return witness(or_prop(pw.from, qw.from), pw.to, code, pw.fuel + qw.fuel);
}

OrderWitness modus_ponens(const RProp& p, const RProp& q) {
  // Lx.Lw. (fst w)(snd w): the implication proof applied to the premise.
  PcaCode code = encode(lam_(lam_(app_(fst_(var_(0)), snd_(var_(0))))));
  return witness(and_prop(implies_prop(p, q), p), q, code, 8 * kDefaultFuel);
}

OrderWitness curry_mate(const RProp& p, const RProp& r, const RProp& q,
                        const OrderWitness& w) {
  // (x, r-proof) |-> code of Lpp. {w}(x, <pp, r>).
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  std::vector<Nat> keys;
  for (const auto& x : r.base().sample)
    for (const auto& rp : r.carrier.fiber_sample(x)) {
      PcaCode section =
          encode(lam_(capp2(w.code, lit_(x), pair_(var_(0), lit_(rp)))));
      entries.push_back({{x, rp}, section});
      keys.push_back(cantor_pair(x, rp));
    }
  return witness(r, implies_prop(p, q), code_table2(entries, code_const(0)),
                 table_fuel(keys) + 8 * kDefaultFuel);
}

OrderWitness uncurry_mate(const RProp& p, const RProp& r, const RProp& q,
                          const OrderWitness& w) {
  // Lx.Lu. ({w}(x, snd u))(fst u)
  PcaCode code = encode(lam_(lam_(
      app_(capp2(w.code, var_(1), snd_(var_(0))), fst_(var_(0))))));
  return witness(and_prop(p, r), q, code, 4 * w.fuel + kDefaultFuel);
}

// ---------------------------------------------------------------------------
// Substitution and quantifiers.

RProp subst_prop(const TrackedArrow& f, const RProp& p) {
  RProp out;
  out.name = p.name + "[" + f.dom.name + "]";
  out.carrier = subst(f, p.carrier);
  if (p.small) {
    out.small = true;
    out.small_witness = std::make_shared<SetFamily>(
        tau(f.dom, compose(p.small_witness->classifier, f)));
    out.to_small = encode(lam_(lam_(
        capp2(p.to_small, capp(f.code, var_(1)), var_(0)))));
    out.from_small = encode(lam_(lam_(
        capp2(p.from_small, capp(f.code, var_(1)), var_(0)))));
  }
  return out;
}

OrderWitness subst_leq(const TrackedArrow& f, const OrderWitness& w) {
  PcaCode code = encode(lam_(lam_(capp2(w.code, capp(f.code, var_(1)), var_(0)))));
  return witness(subst_prop(f, w.from), subst_prop(f, w.to), code,
                 w.fuel + f.fuel + kDefaultFuel);
}

RProp exists_along(const TrackedArrow& f, const RProp& p) {
  RProp out;
  out.name = "E_" + f.dom.name + "(" + p.name + ")";
  out.carrier = sigma_along(f, p.carrier);
  return out;
}

RProp forall_along(const TrackedArrow& f, const RProp& p) {
  RProp out;
  out.name = "A_" + f.dom.name + "(" + p.name + ")";
  out.carrier = weak_pi_along(f, p.carrier);
  return out;
}

namespace {

std::vector<Nat> preimage(const TrackedArrow& f, const Nat& y) {
  std::vector<Nat> out;
  for (const auto& x : f.dom.sample)
    if (arrow_apply(f, x) == y) out.push_back(x);
  return out;
}

void require_set_fibred(const TrackedArrow& f) {
  if (!is_set_fibred(f))
    throw Error("not-set-fibred",
                "small quantification requires a set-fibred arrow");
}

}  // namespace

namespace {

// Finite dispatch (y, i) -> x_i over the sampled preimages, and its inverse.
struct PreimageIndex {
  PcaCode idx;  // <y, i> |-> x_i
  PcaCode xdi;  // <y, x> |-> index of x
  Fuel fuel;
};

PreimageIndex preimage_index(const TrackedArrow& f) {
  std::vector<std::pair<Nat, Nat>> idx, xdi;
  std::vector<Nat> keys;
  for (const auto& y : f.cod.sample) {
    auto xs = preimage(f, y);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      idx.emplace_back(cantor_pair(y, Nat(i)), xs[i]);
      xdi.emplace_back(cantor_pair(y, xs[i]), Nat(i));
      keys.push_back(cantor_pair(y, xs[i]));
    }
  }
  return PreimageIndex{code_table(idx, 0), code_table(xdi, 0),
                       table_fuel(keys) + 8 * kDefaultFuel};
}

}  // namespace

RProp exists_along_small(const TrackedArrow& f, const RProp& p) {
  require_set_fibred(f);
  if (!p.small) throw Error("not-small", "small exists needs a small body");
  RProp out = exists_along(f, p);
  // Presentation: at y the preimage {x_0..x_{k-1}} indexes a sigma code
  // whose fibers are the set-level proof fibers.
  auto p_cl = p.small_witness->classifier;
  const Collection& cod = f.cod;
  auto code_at = [&](const Nat& y) {
    auto xs = preimage(f, y);
    std::vector<std::pair<Nat, Nat>> fam_entries;
    for (std::size_t i = 0; i < xs.size(); ++i)
      fam_entries.emplace_back(Nat(i), arrow_apply(p_cl, xs[i]));
    return sigma_code(nat_code(xs.size()), code_table(fam_entries, empty_code()));
  };
  out.small = true;
  out.small_witness = std::make_shared<SetFamily>(
      tau(cod, classifier_table(cod, code_at, empty_code())));
  // <x, proof> <-> <index(x), set-proof> through the preimage dispatch.
  PreimageIndex pi = preimage_index(f);
  out.to_small = encode(lam_(lam_(pair_(
      capp(pi.xdi, pair_(var_(1), fst_(var_(0)))),
      capp2(p.to_small, fst_(var_(0)), snd_(var_(0)))))));
  TermPtr x_of_i = capp(pi.idx, pair_(var_(1), fst_(var_(0))));
  out.from_small = encode(lam_(lam_(pair_(
      x_of_i, capp2(p.from_small, x_of_i, snd_(var_(0)))))));
  return out;
}

RProp forall_along_small(const TrackedArrow& f, const RProp& p) {
  require_set_fibred(f);
  if (!p.small) throw Error("not-small", "small forall needs a small body");
  RProp out = forall_along(f, p);
  auto p_cl = p.small_witness->classifier;
  const Collection& cod = f.cod;
  auto code_at = [&](const Nat& y) {
    auto xs = preimage(f, y);
    std::vector<std::pair<Nat, Nat>> fam_entries;
    for (std::size_t i = 0; i < xs.size(); ++i)
      fam_entries.emplace_back(Nat(i), arrow_apply(p_cl, xs[i]));
    return pi_code(nat_code(xs.size()), code_table(fam_entries, unit_code()));
  };
  out.small = true;
  out.small_witness = std::make_shared<SetFamily>(
      tau(cod, classifier_table(cod, code_at, pi_code(nat_code(0), code_const(unit_code())))));
  // A carrier code n becomes Li. to_p(x_i, {n}(x_i)) by partially applying a
  // closed combinator to the packed environment <y, n>, and conversely.
  PreimageIndex pi = preimage_index(f);
  {
    TermPtr x_at = capp(pi.idx, pair_(fst_(var_(1)), var_(0)));
    PcaCode generic = encode(lam_(lam_(
        capp2(p.to_small, x_at, app_(snd_(var_(1)), x_at)))));
    out.to_small = encode(lam_(lam_(capp(generic, pair_(var_(1), var_(0))))));
  }
  {
    TermPtr i_at = capp(pi.xdi, pair_(fst_(var_(1)), var_(0)));
    PcaCode generic = encode(lam_(lam_(
        capp2(p.from_small, var_(0), app_(snd_(var_(1)), i_at)))));
    out.from_small = encode(lam_(lam_(capp(generic, pair_(var_(1), var_(0))))));
  }
  return out;
}

OrderWitness exists_mate_fwd(const TrackedArrow& f, const RProp& p,
                             const RProp& q, const OrderWitness& w) {
  PcaCode code = encode(lam_(lam_(capp2(w.code, fst_(var_(0)), snd_(var_(0))))));
  return witness(exists_along(f, p), q, code, w.fuel + kDefaultFuel);
}

OrderWitness exists_mate_bwd(const TrackedArrow& f, const RProp& p,
                             const RProp& q, const OrderWitness& w) {
  PcaCode code = encode(lam_(lam_(
      capp2(w.code, capp(f.code, var_(1)), pair_(var_(1), var_(0))))));
  return witness(p, subst_prop(f, q), code, w.fuel + f.fuel + kDefaultFuel);
}

OrderWitness forall_mate_fwd(const TrackedArrow& f, const RProp& q,
                             const RProp& p, const OrderWitness& w) {
  // (y, q-proof) |-> code of Lx.{w}(x, q-proof)
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  std::vector<Nat> keys;
  for (const auto& y : f.cod.sample)
    for (const auto& qq : q.carrier.fiber_sample(y)) {
      PcaCode section = encode(lam_(capp2(w.code, var_(0), lit_(qq))));
      entries.push_back({{y, qq}, section});
      keys.push_back(cantor_pair(y, qq));
    }
  return witness(q, forall_along(f, p), code_table2(entries, code_const(0)),
                 table_fuel(keys) + 4 * w.fuel);
}

OrderWitness forall_mate_bwd(const TrackedArrow& f, const RProp& q,
                             const RProp& p, const OrderWitness& w) {
  // Lx.Lq. ({w}({f}(x), q))(x)
  PcaCode code = encode(lam_(lam_(
      app_(capp2(w.code, capp(f.code, var_(1)), var_(0)), var_(1)))));
  return witness(subst_prop(f, q), p, code, 4 * w.fuel + f.fuel + kDefaultFuel);
}

OrderIso frobenius(const TrackedArrow& f, const RProp& q_over_cod,
                   const RProp& p_over_dom) {
  RProp lhs = exists_along(f, and_prop(subst_prop(f, q_over_cod), p_over_dom));
  RProp rhs = and_prop(q_over_cod, exists_along(f, p_over_dom));
  // <x, <q, p>>  <->  <q, <x, p>>: the same shuffle both ways.
  PcaCode shuffle = encode(lam_(lam_(pair_(
      fst_(snd_(var_(0))), pair_(fst_(var_(0)), snd_(snd_(var_(0))))))));
  return OrderIso{witness(lhs, rhs, shuffle), witness(rhs, lhs, shuffle)};
}

OrderIso beck_chevalley(const TrackedArrow& f, const Family& c, const RProp& p) {
  TrackedArrow top = sigma_map(f, c);
  TrackedArrow left = functor_I_obj(subst(f, c));
  TrackedArrow right = functor_I_obj(c);
  RProp lhs = exists_along(left, subst_prop(top, p));
  RProp rhs = subst_prop(f, exists_along(right, p));
  // <w, proof> |-> <Sigma(f,C)(w), proof>
  PcaCode fwd = encode(lam_(lam_(
      pair_(capp(top.code, fst_(var_(0))), snd_(var_(0))))));
  // <v, proof> |-> <<x, snd v>, proof>
  PcaCode bwd = encode(lam_(lam_(
      pair_(pair_(var_(1), snd_(fst_(var_(0)))), snd_(var_(0))))));
  return OrderIso{witness(lhs, rhs, fwd, 2 * f.fuel + kDefaultFuel),
                  witness(rhs, lhs, bwd, 2 * f.fuel + kDefaultFuel)};
}

bool check_small(const RProp& p) {
  if (!p.small) return false;
  if (!p.small_witness) return false;
  RProp pres = mk_prop(p.name + "~", p.small_witness->family);
  OrderWitness to{p, pres, p.to_small, 8 * kDefaultFuel};
  OrderWitness from{pres, p, p.from_small, 8 * kDefaultFuel};
  return check_leq(to) && check_leq(from);
}

}  // namespace peff

#include "peff/depfib.hpp"

#include <algorithm>
#include <set>

namespace peff {

namespace {

constexpr std::size_t kDepPointCap = 8;
constexpr std::size_t kDepFiberCap = 4;
constexpr std::size_t kDepProofCap = 2;

std::vector<Nat> capped(std::vector<Nat> xs, std::size_t cap) {
  if (xs.size() > cap) xs.resize(cap);
  return xs;
}

Nat must2(const PcaCode& code, const Nat& x, const Nat& y, Fuel fuel,
          const std::string& what) {
  EvalOutcome out = apply2(code, x, y, fuel);
  if (!out.is_value())
    throw Error("witness-failure", what + " diverged at (" + nat_str(x) + ", " +
                                       nat_str(y) + ")");
  return out.value;
}

// Term shorthands for the recurring witness applications.
TermPtr w_app(const PcaCode& code, TermPtr pt, TermPtr proof) {
  return app_(app_(lit_(code), std::move(pt)), std::move(proof));
}

TermPtr pt2(TermPtr a, TermPtr b) { return pair_(std::move(a), std::move(b)); }
TermPtr pt3(TermPtr a, TermPtr b, TermPtr c) {
  return pair_(std::move(a), pair_(std::move(b), std::move(c)));
}

}  // namespace

std::vector<Nat> fiber_rel_proofs(const FiberedEqRel& s, const Nat& a,
                                  const Nat& b, const Nat& bp) {
  return s.rel.carrier.fiber_sample(cantor_pair(a, cantor_pair(b, bp)));
}

Nat dep_transport(const DepCollection& d, const Nat& a, const Nat& ap,
                  const Nat& r, const Nat& b) {
  return must2(d.sigma, cantor_pair(a, ap), cantor_pair(b, r), d.fuel,
               d.name + ".sigma");
}

// ---------------------------------------------------------------------------
// Validation.

namespace {

struct DepSweep {
  std::vector<Nat> points;
  const DepCollection& d;

  explicit DepSweep(const DepCollection& d0)
      : points(capped(d0.base.base.sample, kDepPointCap)), d(d0) {}

  std::vector<Nat> fiber(const Nat& a) const {
    return capped(d.fam.fiber_sample(a), kDepFiberCap);
  }
  std::vector<Nat> rproofs(const Nat& a, const Nat& ap) const {
    return capped(rel_proofs(d.base, a, ap), kDepProofCap);
  }
  std::vector<Nat> sproofs(const Nat& a, const Nat& b, const Nat& bp) const {
    return capped(fiber_rel_proofs(d.s, a, b, bp), kDepProofCap);
  }
};

void validate_fibered_rel(const DepCollection& d) {
  DepSweep sweep(d);
  for (const auto& a : sweep.points) {
    for (const auto& b : sweep.fiber(a)) {
      Nat p = must2(d.s.refl, cantor_pair(a, b), 0, d.fuel, d.name + ".S.refl");
      if (!d.s.rel.carrier.fiber_member(cantor_pair(a, cantor_pair(b, b)), p))
        throw Error("witness-failure", d.name + ": fiber refl fails at " + nat_str(a));
      for (const auto& bp : sweep.fiber(a))
        for (const auto& pr : sweep.sproofs(a, b, bp)) {
          Nat q = must2(d.s.sym, cantor_pair(a, cantor_pair(b, bp)), pr, d.fuel,
                        d.name + ".S.sym");
          if (!d.s.rel.carrier.fiber_member(cantor_pair(a, cantor_pair(bp, b)), q))
            throw Error("witness-failure", d.name + ": fiber sym fails");
          for (const auto& bq : sweep.fiber(a))
            for (const auto& qr : sweep.sproofs(a, bp, bq)) {
              Nat t = must2(d.s.trans,
                            cantor_pair(a, cantor_pair(b, cantor_pair(bp, bq))),
                            cantor_pair(pr, qr), d.fuel, d.name + ".S.trans");
              if (!d.s.rel.carrier.fiber_member(
                      cantor_pair(a, cantor_pair(b, bq)), t))
                throw Error("witness-failure", d.name + ": fiber trans fails");
            }
        }
    }
  }
}

void validate_conditions(const DepCollection& d) {
  DepSweep sweep(d);
  auto in_s = [&](const Nat& a, const Nat& b, const Nat& bp, const Nat& w) {
    return d.s.rel.carrier.fiber_member(cantor_pair(a, cantor_pair(b, bp)), w);
  };
  for (const auto& a : sweep.points) {
    for (const auto& ap : sweep.points) {
      for (const auto& r : sweep.rproofs(a, ap)) {
        Nat aa = cantor_pair(a, ap);
        for (const auto& b : sweep.fiber(a)) {
          Nat sb = dep_transport(d, a, ap, r, b);
          if (!d.fam.fiber_member(ap, sb))
            throw Error("condition-1-failure",
                        d.name + ": transport leaves the fiber at (" + nat_str(a) +
                            ", " + nat_str(ap) + ")");
          // Condition 1: sigma preserves S.
          for (const auto& bp : sweep.fiber(a))
            for (const auto& p : sweep.sproofs(a, b, bp)) {
              Nat point = cantor_pair(aa, cantor_pair(cantor_pair(b, bp), r));
              Nat moved = must2(d.cond1, point, p, d.fuel, d.name + ".cond1");
              if (!in_s(ap, sb, dep_transport(d, a, ap, r, bp), moved))
                throw Error("condition-1-failure",
                            d.name + " at (" + nat_str(a) + ", " + nat_str(ap) + ")");
            }
        }
      }
      // Condition 4 (derived): transport does not depend on the realizer.
      auto rs = sweep.rproofs(a, ap);
      for (const auto& b : sweep.fiber(a))
        for (const auto& r : rs)
          for (const auto& rp : rs) {
            Nat u = dep_transport(d, a, ap, r, b);
            Nat v = dep_transport(d, a, ap, rp, b);
            if (fiber_rel_proofs(d.s, ap, u, v).empty())
              throw Error("condition-4-failure",
                          d.name + ": transports along " + nat_str(r) + " and " +
                              nat_str(rp) + " differ at (" + nat_str(a) + ", " +
                              nat_str(ap) + ", " + nat_str(b) + ")");
          }
    }
    // Condition 2: identities.
    for (const auto& r : sweep.rproofs(a, a))
      for (const auto& b : sweep.fiber(a)) {
        Nat point = cantor_pair(a, cantor_pair(b, r));
        Nat w = must2(d.cond2, point, 0, d.fuel, d.name + ".cond2");
        if (!in_s(a, b, dep_transport(d, a, a, r, b), w))
          throw Error("condition-2-failure", d.name + " at " + nat_str(a));
      }
  }
  // Condition 3: composition, on a smaller sweep.
  auto pts = capped(sweep.points, 5);
  for (const auto& a : pts)
    for (const auto& ap : pts)
      for (const auto& r : sweep.rproofs(a, ap))
        for (const auto& app_ : pts)
          for (const auto& rp : sweep.rproofs(ap, app_))
            for (const auto& rpp : sweep.rproofs(a, app_))
              for (const auto& b : sweep.fiber(a)) {
                Nat point = cantor_pair(
                    cantor_pair(a, cantor_pair(ap, app_)),
                    cantor_pair(b, cantor_pair(r, cantor_pair(rp, rpp))));
                Nat w = must2(d.cond3, point, 0, d.fuel, d.name + ".cond3");
                Nat lhs = dep_transport(d, a, app_, rpp, b);
                Nat rhs = dep_transport(d, ap, app_, rp, dep_transport(d, a, ap, r, b));
                if (!in_s(app_, lhs, rhs, w))
                  throw Error("condition-3-failure", d.name + " at " + nat_str(a));
              }
}

}  // namespace

DepCollection mk_depcol(std::string name, QObject base, Family fam,
                        FiberedEqRel s, PcaCode sigma, PcaCode cond1,
                        PcaCode cond2, PcaCode cond3, bool small,
                        std::shared_ptr<const SetFamily> small_witness) {
  DepCollection d{std::move(name), std::move(base), std::move(fam), std::move(s),
                  std::move(sigma), std::move(cond1), std::move(cond2),
                  std::move(cond3), small, std::move(small_witness)};
  if (d.small && !d.small_witness)
    throw Error("not-small", d.name + ": small flag requires a set family witness");
  validate_fibered_rel(d);
  validate_conditions(d);
  return d;
}

DepCollection retarget(const DepCollection& d, const QObject& base2,
                       const PcaCode& h, const PcaCode& k) {
  (void)h;  // h is the other direction of the representative swap
  // sigma' precomposes the realizer with k : R' -> R.
  PcaCode sigma = encode(lam_(lam_(w_app(
      d.sigma, var_(1),
      pt2(fst_(var_(0)), w_app(k, var_(1), snd_(var_(0))))))));
  // Conditions conjugate their embedded realizers with k.
  TermPtr c1_pt = pt2(fst_(var_(1)),
                      pt2(fst_(snd_(var_(1))),
                          w_app(k, fst_(var_(1)), snd_(snd_(var_(1))))));
  PcaCode cond1 = encode(lam_(lam_(w_app(d.cond1, c1_pt, var_(0)))));
  TermPtr c2_pt = pt2(fst_(var_(1)),
                      pt2(fst_(snd_(var_(1))),
                          w_app(k, pt2(fst_(var_(1)), fst_(var_(1))),
                                snd_(snd_(var_(1))))));
  PcaCode cond2 = encode(lam_(lam_(w_app(d.cond2, c2_pt, var_(0)))));
  // cond3 point: <<a,<a',a''>>, <b, <r,<r',r''>>>> with three realizers.
  TermPtr as = fst_(var_(1));
  TermPtr a0 = fst_(as), a1 = fst_(snd_(as)), a2 = snd_(snd_(as));
  TermPtr rs = snd_(snd_(var_(1)));
  TermPtr c3_pt = pt2(
      as, pt2(fst_(snd_(var_(1))),
              pt2(w_app(k, pt2(a0, a1), fst_(rs)),
                  pt2(w_app(k, pt2(a1, a2), fst_(snd_(rs))),
                      w_app(k, pt2(a0, a2), snd_(snd_(rs)))))));
  PcaCode cond3 = encode(lam_(lam_(w_app(d.cond3, c3_pt, var_(0)))));
  return mk_depcol(d.name + "'", base2, d.fam, d.s, sigma, cond1, cond2, cond3,
                   d.small, d.small_witness);
}

// ---------------------------------------------------------------------------
// Morphisms.

DepMorphism mk_depmorphism(DepCollection dom, DepCollection cod, FamilyArrow f,
                           PcaCode respect, PcaCode squares) {
  DepMorphism m{std::move(dom), std::move(cod), std::move(f), std::move(respect),
                std::move(squares)};
  DepSweep sweep(m.dom);
  auto in_h = [&](const Nat& a, const Nat& c, const Nat& cp, const Nat& w) {
    return m.cod.s.rel.carrier.fiber_member(cantor_pair(a, cantor_pair(c, cp)), w);
  };
  for (const auto& a : sweep.points) {
    for (const auto& b : sweep.fiber(a))
      for (const auto& bp : sweep.fiber(a))
        for (const auto& p : sweep.sproofs(a, b, bp)) {
          Nat w = must2(m.respect, cantor_pair(a, cantor_pair(b, bp)), p,
                        m.dom.fuel, "respect");
          if (!in_h(a, family_apply(m.f, a, b), family_apply(m.f, a, bp), w))
            throw Error("witness-failure", "morphism respect fails at " + nat_str(a));
        }
    for (const auto& ap : sweep.points)
      for (const auto& r : sweep.rproofs(a, ap))
        for (const auto& b : sweep.fiber(a)) {
          Nat w = must2(m.squares, cantor_pair(cantor_pair(a, ap), cantor_pair(b, r)),
                        0, m.dom.fuel, "squares");
          Nat nu_fb = dep_transport(m.cod, a, ap, r, family_apply(m.f, a, b));
          Nat f_sb = family_apply(m.f, ap, dep_transport(m.dom, a, ap, r, b));
          if (!in_h(ap, nu_fb, f_sb, w))
            throw Error("witness-failure", "morphism squares fail at " + nat_str(a));
        }
  }
  return m;
}

DepMorphism dep_identity(const DepCollection& d) {
  // squares: S(nu(r,b), sigma(r,b)) for the same transport is reflexivity.
  PcaCode squares = encode(lam_(lam_(w_app(
      d.s.refl,
      pt2(snd_(fst_(var_(1))),
          w_app(d.sigma, fst_(var_(1)),
                pt2(fst_(snd_(var_(1))), snd_(snd_(var_(1)))))),
      lit_(0)))));
  return mk_depmorphism(d, d, fam_identity(d.fam), code_fam_identity(), squares);
}

DepMorphism dep_compose(const DepMorphism& g, const DepMorphism& f) {
  PcaCode respect = encode(lam_(lam_(w_app(
      g.respect,
      pt2(fst_(var_(1)),
          pt2(app_(app_(lit_(f.f.code), fst_(var_(1))), fst_(snd_(var_(1)))),
              app_(app_(lit_(f.f.code), fst_(var_(1))), snd_(snd_(var_(1)))))),
      w_app(f.respect, var_(1), var_(0))))));
  // squares of the composite: trans of g-square at f with g of f-square.
  TermPtr aa = var_(1);
  TermPtr a = fst_(aa), ap = snd_(aa);
  TermPtr b = fst_(snd_(var_(1))), r = snd_(snd_(var_(1)));
  auto fap = [&](TermPtr x, TermPtr v) {
    return app_(app_(lit_(f.f.code), std::move(x)), std::move(v));
  };
  auto gap = [&](TermPtr x, TermPtr v) {
    return app_(app_(lit_(g.f.code), std::move(x)), std::move(v));
  };
  TermPtr fb = fap(a, b);
  TermPtr sb = w_app(f.dom.sigma, pt2(a, ap), pt2(b, r));
  TermPtr f_sb = fap(ap, sb);
  TermPtr nu_fb = w_app(f.cod.sigma, pt2(a, ap), pt2(fb, r));
  TermPtr gsq = w_app(g.squares, pt2(pt2(a, ap), pt2(fb, r)), lit_(0));
  TermPtr fsq = w_app(f.squares, pt2(pt2(a, ap), pt2(b, r)), lit_(0));
  TermPtr g_fsq = w_app(g.respect, pt2(ap, pt2(nu_fb, f_sb)), fsq);
  TermPtr chain = w_app(
      g.cod.s.trans,
      pt2(ap, pt2(w_app(g.cod.sigma, pt2(a, ap), pt2(gap(a, fb), r)),
                  pt2(gap(ap, nu_fb), gap(ap, f_sb)))),
      pt2(gsq, g_fsq));
  PcaCode squares = encode(lam_(lam_(chain)));
  return mk_depmorphism(f.dom, g.cod, fam_compose(g.f, f.f), respect, squares);
}

bool dep_eq(const DepMorphism& f, const DepMorphism& g) {
  // A sampled H-proof relating f b and g b' for every sampled S-related
  // (b, b') yields a table witness; absence refutes at this sample.
  DepSweep sweep(f.dom);
  for (const auto& a : sweep.points)
    for (const auto& b : sweep.fiber(a))
      for (const auto& bp : sweep.fiber(a)) {
        if (sweep.sproofs(a, b, bp).empty()) continue;
        if (fiber_rel_proofs(g.cod.s, a, family_apply(f.f, a, b),
                             family_apply(g.f, a, bp))
                .empty())
          return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// The functor K.

QObject k_domain(const DepCollection& d) {
  Collection base = sigma_total(d.fam);
  auto rm = d.base.rel.carrier.fiber_member;
  auto rs = d.base.rel.carrier.fiber_sample;
  auto sm = d.s.rel.carrier.fiber_member;
  auto ss = d.s.rel.carrier.fiber_sample;
  PcaCode sig = d.sigma;
  Fuel fuel = d.fuel;
  Family fam = mk_family(
      "rel(K " + d.name + ")", product(base, base),
      [rm, sm, sig, fuel](const Nat& pt, const Nat& w) {
        Nat a = cantor_fst(cantor_fst(pt)), b = cantor_snd(cantor_fst(pt));
        Nat ap = cantor_fst(cantor_snd(pt)), bp = cantor_snd(cantor_snd(pt));
        Nat r = cantor_fst(w), s = cantor_snd(w);
        if (!rm(cantor_pair(a, ap), r)) return false;
        EvalOutcome moved = apply2(sig, cantor_pair(a, ap), cantor_pair(b, r), fuel);
        if (!moved.is_value()) return false;
        return sm(cantor_pair(ap, cantor_pair(moved.value, bp)), s);
      },
      [rs, ss, sig, fuel](const Nat& pt) {
        Nat a = cantor_fst(cantor_fst(pt)), b = cantor_snd(cantor_fst(pt));
        Nat ap = cantor_fst(cantor_snd(pt)), bp = cantor_snd(cantor_snd(pt));
        std::vector<Nat> out;
        for (const auto& r : rs(cantor_pair(a, ap))) {
          EvalOutcome moved = apply2(sig, cantor_pair(a, ap), cantor_pair(b, r), fuel);
          if (!moved.is_value()) continue;
          for (const auto& s : ss(cantor_pair(ap, cantor_pair(moved.value, bp))))
            out.push_back(cantor_pair(r, s));
          if (out.size() >= kFiberCap) break;
        }
        return out;
      });
  RProp rel = mk_prop("rel(K)", std::move(fam));

  // refl: <refl_R(a), sym_S(cond2 at refl)>.
  TermPtr w = var_(1);
  TermPtr a = fst_(w), b = snd_(w);
  TermPtr r0 = w_app(d.base.refl, a, lit_(0));
  TermPtr sig0 = w_app(d.sigma, pt2(a, a), pt2(b, r0));
  TermPtr c2 = w_app(d.cond2, pt2(a, pt2(b, r0)), lit_(0));
  TermPtr s0 = w_app(d.s.sym, pt2(a, pt2(b, sig0)), c2);
  PcaCode refl = encode(lam_(lam_(pair_(r0, s0))));

  // sym: the assembled inverse transport proof.
  TermPtr pt = var_(1), pr = var_(0);
  TermPtr sa = fst_(fst_(pt)), sb = snd_(fst_(pt));
  TermPtr sap = fst_(snd_(pt)), sbp = snd_(snd_(pt));
  TermPtr sr = fst_(pr), sspf = snd_(pr);
  TermPtr rsym = w_app(d.base.sym, pt2(sa, sap), sr);
  TermPtr sig_r_b = w_app(d.sigma, pt2(sa, sap), pt2(sb, sr));
  TermPtr flipped = w_app(d.s.sym, pt2(sap, pt2(sig_r_b, sbp)), sspf);
  TermPtr c1p = w_app(d.cond1, pt2(pt2(sap, sa), pt2(pt2(sbp, sig_r_b), rsym)),
                      flipped);
  TermPtr rtr = w_app(d.base.trans, pt3(sa, sap, sa), pt2(sr, rsym));
  TermPtr c3p = w_app(d.cond3,
                      pt2(pt3(sa, sap, sa), pt2(sb, pt2(sr, pt2(rsym, rtr)))),
                      lit_(0));
  TermPtr c2p = w_app(d.cond2, pt2(sa, pt2(sb, rtr)), lit_(0));
  TermPtr sig_rtr_b = w_app(d.sigma, pt2(sa, sa), pt2(sb, rtr));
  TermPtr sig_rsym_sig = w_app(d.sigma, pt2(sap, sa), pt2(sig_r_b, rsym));
  TermPtr t1 = w_app(d.s.trans, pt2(sa, pt3(sb, sig_rtr_b, sig_rsym_sig)),
                     pt2(c2p, c3p));
  TermPtr st1 = w_app(d.s.sym, pt2(sa, pt2(sb, sig_rsym_sig)), t1);
  TermPtr sig_rsym_bp = w_app(d.sigma, pt2(sap, sa), pt2(sbp, rsym));
  TermPtr sfinal = w_app(d.s.trans, pt2(sa, pt3(sig_rsym_bp, sig_rsym_sig, sb)),
                         pt2(c1p, st1));
  PcaCode sym = encode(lam_(lam_(pair_(rsym, sfinal))));

  // trans: compose the base realizers, then chain cond3 with cond1.
  TermPtr tp = var_(1), tpr = var_(0);
  TermPtr ta = fst_(fst_(tp)), tb = snd_(fst_(tp));
  TermPtr ta1 = fst_(fst_(snd_(tp))), tb1 = snd_(fst_(snd_(tp)));
  TermPtr ta2 = fst_(snd_(snd_(tp))), tb2 = snd_(snd_(snd_(tp)));
  TermPtr tr1 = fst_(fst_(tpr)), ts1 = snd_(fst_(tpr));
  TermPtr tr2 = fst_(snd_(tpr)), ts2 = snd_(snd_(tpr));
  TermPtr rt = w_app(d.base.trans, pt3(ta, ta1, ta2), pt2(tr1, tr2));
  TermPtr c3t = w_app(d.cond3,
                      pt2(pt3(ta, ta1, ta2), pt2(tb, pt2(tr1, pt2(tr2, rt)))),
                      lit_(0));
  TermPtr sig_r1_b = w_app(d.sigma, pt2(ta, ta1), pt2(tb, tr1));
  TermPtr c1t = w_app(d.cond1, pt2(pt2(ta1, ta2), pt2(pt2(sig_r1_b, tb1), tr2)),
                      ts1);
  TermPtr sig_rt_b = w_app(d.sigma, pt2(ta, ta2), pt2(tb, rt));
  TermPtr sig_r2_sig = w_app(d.sigma, pt2(ta1, ta2), pt2(sig_r1_b, tr2));
  TermPtr sig_r2_b1 = w_app(d.sigma, pt2(ta1, ta2), pt2(tb1, tr2));
  TermPtr t1t = w_app(d.s.trans, pt2(ta2, pt3(sig_rt_b, sig_r2_sig, sig_r2_b1)),
                      pt2(c3t, c1t));
  TermPtr tfin = w_app(d.s.trans, pt2(ta2, pt3(sig_rt_b, sig_r2_b1, tb2)),
                       pt2(t1t, ts2));
  PcaCode trans = encode(lam_(lam_(pair_(rt, tfin))));

  return mk_qobject("K(" + d.name + ")", base, rel, refl, sym, trans,
                    8 * d.fuel);
}

QArrow functor_K(const DepCollection& d) {
  QObject dom = k_domain(d);
  return mk_qarrow(dom, d.base, mk_arrow(dom.base, d.base.base, code_fst()),
                   encode(lam_(lam_(fst_(var_(0))))));
}

QArrow functor_K_map(const DepMorphism& m) {
  QObject dom = k_domain(m.dom);
  QObject cod = k_domain(m.cod);
  TrackedArrow map = functor_I_map(m.f);
  // <r, s> |-> <r, trans(squares, respect s)>.
  TermPtr pt = var_(1), pr = var_(0);
  TermPtr a = fst_(fst_(pt)), b = snd_(fst_(pt));
  TermPtr ap = fst_(snd_(pt)), bp = snd_(snd_(pt));
  TermPtr r = fst_(pr), s = snd_(pr);
  auto fap = [&](TermPtr x, TermPtr v) {
    return app_(app_(lit_(m.f.code), std::move(x)), std::move(v));
  };
  TermPtr sb = w_app(m.dom.sigma, pt2(a, ap), pt2(b, r));
  TermPtr nu_fb = w_app(m.cod.sigma, pt2(a, ap), pt2(fap(a, b), r));
  TermPtr sq = w_app(m.squares, pt2(pt2(a, ap), pt2(b, r)), lit_(0));
  TermPtr rs = w_app(m.respect, pt2(ap, pt2(sb, bp)), s);
  TermPtr chained = w_app(m.cod.s.trans,
                          pt2(ap, pt3(nu_fb, fap(ap, sb), fap(ap, bp))),
                          pt2(sq, rs));
  PcaCode respect = encode(lam_(lam_(pair_(r, chained))));
  return mk_qarrow(dom, cod, map, respect);
}

// ---------------------------------------------------------------------------
// Essential surjectivity.

DepCollection k_inverse(const QArrow& q) {
  const QObject& target = q.cod;   // (A, R)
  const QObject& source = q.dom;   // (A', R')
  auto am = source.base.member;
  auto as = source.base.sample;
  auto rm = target.rel.carrier.fiber_member;
  auto rs = target.rel.carrier.fiber_sample;
  PcaCode fmap = q.map.code;
  Fuel fuel = q.map.fuel + 4 * kDefaultFuel;
  Family fam = mk_family(
      "B^" + source.name, target.base,
      [am, rm, fmap, fuel](const Nat& a, const Nat& w) {
        Nat apr = cantor_fst(w), k = cantor_snd(w);
        if (!am(apr)) return false;
        EvalOutcome fa = apply(fmap, apr, fuel);
        if (!fa.is_value()) return false;
        return rm(cantor_pair(a, fa.value), k);
      },
      [as, rs, fmap, fuel](const Nat& a) {
        std::vector<Nat> out;
        for (const auto& apr : as) {
          EvalOutcome fa = apply(fmap, apr, fuel);
          if (!fa.is_value()) continue;
          for (const auto& k : rs(cantor_pair(a, fa.value)))
            out.push_back(cantor_pair(apr, k));
          if (out.size() >= kFiberCap) break;
        }
        return out;
      });

  // S^f: the source relation on the first components.
  auto rpm = source.rel.carrier.fiber_member;
  auto rps = source.rel.carrier.fiber_sample;
  Collection total = sigma_total(fam_product(fam, fam));
  (void)total;
  Family sfam = mk_family(
      "S^" + source.name, sigma_total(fam_product(fam, fam)),
      [rpm](const Nat& pt, const Nat& p) {
        Nat pairbb = cantor_snd(pt);
        return rpm(cantor_pair(cantor_fst(cantor_fst(pairbb)),
                               cantor_fst(cantor_snd(pairbb))),
                   p);
      },
      [rps](const Nat& pt) {
        Nat pairbb = cantor_snd(pt);
        return rps(cantor_pair(cantor_fst(cantor_fst(pairbb)),
                               cantor_fst(cantor_snd(pairbb))));
      });
  FiberedEqRel s;
  s.rel = mk_prop("S^f", std::move(sfam));
  s.refl = encode(lam_(lam_(w_app(source.refl, fst_(snd_(var_(1))), lit_(0)))));
  s.sym = encode(lam_(lam_(w_app(
      source.sym,
      pt2(fst_(fst_(snd_(var_(1)))), fst_(snd_(snd_(var_(1))))), var_(0)))));
  s.trans = encode(lam_(lam_(w_app(
      source.trans,
      pt3(fst_(fst_(snd_(var_(1)))), fst_(fst_(snd_(snd_(var_(1))))),
          fst_(snd_(snd_(snd_(var_(1)))))),
      var_(0)))));

  // sigma^f: ((a1,a2), (<a',k>, r)) |-> <a', trans(sym r, k)>.
  TermPtr aa = var_(1);
  TermPtr b = fst_(var_(0)), r = snd_(var_(0));
  TermPtr apr = fst_(b), k = snd_(b);
  TermPtr fa = app_(lit_(fmap), apr);
  TermPtr rsym = w_app(target.sym, aa, r);
  TermPtr moved = w_app(target.trans, pt3(snd_(aa), fst_(aa), fa), pt2(rsym, k));
  PcaCode sigma = encode(lam_(lam_(pair_(apr, moved))));

  // The transport fixes first components, so condition 1 passes proofs
  // through and conditions 2-3 are reflexivity of the source relation.
  PcaCode cond1 = encode(lam_(lam_(var_(0))));
  PcaCode cond2 = encode(lam_(lam_(w_app(
      source.refl, fst_(fst_(snd_(var_(1)))), lit_(0)))));
  PcaCode cond3 = encode(lam_(lam_(w_app(
      source.refl, fst_(fst_(snd_(var_(1)))), lit_(0)))));
  QObject base = target;
  return mk_depcol("B^f", base, fam, s, sigma, cond1, cond2, cond3);
}

SliceIso k_inverse_iso(const QArrow& q) {
  DepCollection d = k_inverse(q);
  QObject kd = k_domain(d);
  const QObject& source = q.dom;
  // fwd: <a, <a', k>> |-> a'; a K-relation proof <r, s> carries the source
  // proof in its second component.
  TrackedArrow fwd_map = mk_arrow(kd.base, source.base,
                                  encode(lam_(fst_(snd_(var_(0))))));
  QArrow fwd = mk_qarrow(kd, source, fwd_map, encode(lam_(lam_(snd_(var_(0))))));
  // bwd: a' |-> <f a', <a', refl>>.
  TermPtr fa = app_(lit_(q.map.code), var_(0));
  TrackedArrow bwd_map = mk_arrow(
      source.base, kd.base,
      encode(lam_(pair_(fa, pair_(var_(0), w_app(q.cod.refl, fa, lit_(0)))))),
      q.map.fuel + q.cod.fuel + kDefaultFuel);
  // respect: p |-> <respect_q(p), p>.
  PcaCode bwd_respect = encode(lam_(lam_(
      pair_(w_app(q.respect, var_(1), var_(0)), var_(0)))));
  QArrow bwd = mk_qarrow(source, kd, bwd_map, bwd_respect);
  return SliceIso{std::move(fwd), std::move(bwd)};
}

// ---------------------------------------------------------------------------
// Reindexing.

DepCollection reindex(const QArrow& p, const DepCollection& d) {
  const QObject& x = p.dom;
  PcaCode pm = p.map.code;
  Fuel fuel = d.fuel + p.map.fuel;
  Family fam = subst(p.map, d.fam);
  auto sm = d.s.rel.carrier.fiber_member;
  auto ss = d.s.rel.carrier.fiber_sample;
  Fuel pf = p.map.fuel;
  Family sfam = mk_family(
      "S[" + x.name + "]", sigma_total(fam_product(fam, fam)),
      [sm, pm, pf](const Nat& pt, const Nat& w) {
        EvalOutcome pa = apply(pm, cantor_fst(pt), pf);
        if (!pa.is_value()) return false;
        return sm(cantor_pair(pa.value, cantor_snd(pt)), w);
      },
      [ss, pm, pf](const Nat& pt) -> std::vector<Nat> {
        EvalOutcome pa = apply(pm, cantor_fst(pt), pf);
        if (!pa.is_value()) return {};
        return ss(cantor_pair(pa.value, cantor_snd(pt)));
      });
  FiberedEqRel s;
  s.rel = mk_prop("S[..]", std::move(sfam));
  auto remap1 = [&](TermPtr pt) {
    return pt2(app_(lit_(pm), fst_(pt)), snd_(pt));
  };
  s.refl = encode(lam_(lam_(w_app(d.s.refl, remap1(var_(1)), var_(0)))));
  s.sym = encode(lam_(lam_(w_app(d.s.sym, remap1(var_(1)), var_(0)))));
  s.trans = encode(lam_(lam_(w_app(d.s.trans, remap1(var_(1)), var_(0)))));
  // sigma' = sigma((p x, p x'), (b, g r)) with g = the respect witness of p.
  TermPtr aa = var_(1);
  TermPtr mapped = pt2(app_(lit_(pm), fst_(aa)), app_(lit_(pm), snd_(aa)));
  PcaCode sigma = encode(lam_(lam_(w_app(
      d.sigma, mapped,
      pt2(fst_(var_(0)), w_app(p.respect, aa, snd_(var_(0))))))));
  PcaCode cond1 = encode(lam_(lam_(w_app(
      d.cond1,
      pt2(pt2(app_(lit_(pm), fst_(fst_(var_(1)))),
              app_(lit_(pm), snd_(fst_(var_(1))))),
          pt2(fst_(snd_(var_(1))),
              w_app(p.respect, fst_(var_(1)), snd_(snd_(var_(1)))))),
      var_(0)))));
  PcaCode cond2 = encode(lam_(lam_(w_app(
      d.cond2,
      pt2(app_(lit_(pm), fst_(var_(1))),
          pt2(fst_(snd_(var_(1))),
              w_app(p.respect, pt2(fst_(var_(1)), fst_(var_(1))),
                    snd_(snd_(var_(1)))))),
      var_(0)))));
  TermPtr as = fst_(var_(1));
  TermPtr a0 = fst_(as), a1 = fst_(snd_(as)), a2 = snd_(snd_(as));
  TermPtr rr = snd_(snd_(var_(1)));
  PcaCode cond3 = encode(lam_(lam_(w_app(
      d.cond3,
      pt2(pt3(app_(lit_(pm), a0), app_(lit_(pm), a1), app_(lit_(pm), a2)),
          pt2(fst_(snd_(var_(1))),
              pt2(w_app(p.respect, pt2(a0, a1), fst_(rr)),
                  pt2(w_app(p.respect, pt2(a1, a2), fst_(snd_(rr))),
                      w_app(p.respect, pt2(a0, a2), snd_(snd_(rr))))))),
      var_(0)))));
  std::shared_ptr<const SetFamily> witness;
  if (d.small && d.small_witness) {
    witness = std::make_shared<SetFamily>(
        tau(x.base, compose(d.small_witness->classifier, p.map)));
  }
  (void)fuel;
  return mk_depcol(d.name + "[" + x.name + "]", x, fam, s, sigma, cond1, cond2,
                   cond3, d.small && witness != nullptr, witness);
}

// ---------------------------------------------------------------------------
// Fiber structure.

namespace {

// Relation family over Sigma(A, B x B) from pointwise data.
Family dep_rel_family(
    const std::string& name, const Family& fam,
    std::function<bool(const Nat& a, const Nat& b, const Nat& bp, const Nat& w)>
        member,
    std::function<std::vector<Nat>(const Nat& a, const Nat& b, const Nat& bp)>
        sample) {
  Collection base = sigma_total(fam_product(fam, fam));
  return mk_family(
      name, std::move(base),
      [member](const Nat& pt, const Nat& w) {
        Nat bb = cantor_snd(pt);
        return member(cantor_fst(pt), cantor_fst(bb), cantor_snd(bb), w);
      },
      [sample](const Nat& pt) {
        Nat bb = cantor_snd(pt);
        return sample(cantor_fst(pt), cantor_fst(bb), cantor_snd(bb));
      });
}

// Canonical-value condition witnesses, dispatched over the sampled sweep;
// used where the paper checks the conditions without displaying realizers.
struct CondTables {
  PcaCode cond1, cond2, cond3;
};

CondTables cond_tables(const QObject& base, const Family& fam,
                       const FiberedEqRel& s, const PcaCode& sigma, Fuel fuel) {
  auto transport = [&](const Nat& a, const Nat& ap, const Nat& r, const Nat& b) {
    return must2(sigma, cantor_pair(a, ap), cantor_pair(b, r), fuel, "sigma");
  };
  auto proof_of = [&](const Nat& a, const Nat& u, const Nat& v) {
    auto ps = fiber_rel_proofs(s, a, u, v);
    if (ps.empty())
      throw Error("condition-1-failure",
                  "no sampled proof relating transports at " + nat_str(a));
    return ps.front();
  };
  auto points = capped(base.base.sample, kDepPointCap);
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> t1, t2, t3;
  for (const auto& a : points) {
    for (const auto& ap : points) {
      for (const auto& r : capped(rel_proofs(base, a, ap), kDepProofCap)) {
        Nat aa = cantor_pair(a, ap);
        for (const auto& b : capped(fam.fiber_sample(a), kDepFiberCap)) {
          for (const auto& bp : capped(fam.fiber_sample(a), kDepFiberCap))
            for (const auto& p :
                 capped(fiber_rel_proofs(s, a, b, bp), kDepProofCap)) {
              Nat pt = cantor_pair(aa, cantor_pair(cantor_pair(b, bp), r));
              t1.push_back({{pt, p},
                            proof_of(ap, transport(a, ap, r, b),
                                     transport(a, ap, r, bp))});
            }
          if (a == ap) {
            Nat pt = cantor_pair(a, cantor_pair(b, r));
            t2.push_back({{pt, Nat(0)}, proof_of(a, b, transport(a, a, r, b))});
          }
        }
      }
    }
  }
  auto pts3 = capped(points, 5);
  for (const auto& a : pts3)
    for (const auto& ap : pts3)
      for (const auto& r : capped(rel_proofs(base, a, ap), kDepProofCap))
        for (const auto& app2_ : pts3)
          for (const auto& rp : capped(rel_proofs(base, ap, app2_), kDepProofCap))
            for (const auto& rpp : capped(rel_proofs(base, a, app2_), kDepProofCap))
              for (const auto& b : capped(fam.fiber_sample(a), kDepFiberCap)) {
                Nat pt = cantor_pair(
                    cantor_pair(a, cantor_pair(ap, app2_)),
                    cantor_pair(b, cantor_pair(r, cantor_pair(rp, rpp))));
                Nat lhs = transport(a, app2_, rpp, b);
                Nat rhs = transport(ap, app2_, rp, transport(a, ap, r, b));
                t3.push_back({{pt, Nat(0)}, proof_of(app2_, lhs, rhs)});
              }
  return CondTables{code_table2(t1, 0), code_table2(t2, 0), code_table2(t3, 0)};
}

}  // namespace

DepCollection dep_terminal(const QObject& x) {
  Family fam = constant_unit_family(x.base);
  FiberedEqRel s;
  s.rel = mk_prop("top", dep_rel_family(
                             "rel(1)", fam,
                             [](const Nat&, const Nat& b, const Nat& bp, const Nat& w) {
                               return b == 0 && bp == 0 && w == 0;
                             },
                             [](const Nat&, const Nat&, const Nat&) {
                               return std::vector<Nat>{Nat(0)};
                             }));
  PcaCode triv = encode(lam_(lam_(lit_(0))));
  s.refl = triv;
  s.sym = triv;
  s.trans = triv;
  return mk_depcol("1", x, fam, s, triv, triv, triv, triv);
}

DepMorphism dep_bang(const DepCollection& d) {
  DepCollection one = dep_terminal(d.base);
  PcaCode zero = encode(lam_(lam_(lit_(0))));
  return mk_depmorphism(d, one, mk_family_arrow(d.fam, one.fam, zero), zero, zero);
}

DepCollection dep_product(const DepCollection& b, const DepCollection& c) {
  Family fam = fam_product(b.fam, c.fam);
  auto bs = b.s;
  auto cs = c.s;
  FiberedEqRel s;
  s.rel = mk_prop(
      "relx", dep_rel_family(
                  "rel(" + b.name + "*" + c.name + ")", fam,
                  [bs, cs](const Nat& a, const Nat& w, const Nat& wp, const Nat& pr) {
                    return bs.rel.carrier.fiber_member(
                               cantor_pair(a, cantor_pair(cantor_fst(w),
                                                          cantor_fst(wp))),
                               cantor_fst(pr)) &&
                           cs.rel.carrier.fiber_member(
                               cantor_pair(a, cantor_pair(cantor_snd(w),
                                                          cantor_snd(wp))),
                               cantor_snd(pr));
                  },
                  [bs, cs](const Nat& a, const Nat& w, const Nat& wp) {
                    std::vector<Nat> out;
                    for (const auto& p :
                         fiber_rel_proofs(bs, a, cantor_fst(w), cantor_fst(wp)))
                      for (const auto& q :
                           fiber_rel_proofs(cs, a, cantor_snd(w), cantor_snd(wp)))
                        out.push_back(cantor_pair(p, q));
                    if (out.size() > kFiberCap) out.resize(kFiberCap);
                    return out;
                  }));
  // Componentwise witnesses with point reshuffles.
  TermPtr a_r = fst_(var_(1)), w_r = snd_(var_(1));
  s.refl = encode(lam_(lam_(pair_(
      w_app(b.s.refl, pt2(a_r, fst_(w_r)), lit_(0)),
      w_app(c.s.refl, pt2(a_r, snd_(w_r)), lit_(0))))));
  TermPtr a_s = fst_(var_(1)), u_s = fst_(snd_(var_(1))), v_s = snd_(snd_(var_(1)));
  s.sym = encode(lam_(lam_(pair_(
      w_app(b.s.sym, pt2(a_s, pt2(fst_(u_s), fst_(v_s))), fst_(var_(0))),
      w_app(c.s.sym, pt2(a_s, pt2(snd_(u_s), snd_(v_s))), snd_(var_(0)))))));
  TermPtr a_t = fst_(var_(1));
  TermPtr u_t = fst_(snd_(var_(1))), v_t = fst_(snd_(snd_(var_(1)))),
          z_t = snd_(snd_(snd_(var_(1))));
  s.trans = encode(lam_(lam_(pair_(
      w_app(b.s.trans, pt2(a_t, pt3(fst_(u_t), fst_(v_t), fst_(z_t))),
            pt2(fst_(fst_(var_(0))), fst_(snd_(var_(0))))),
      w_app(c.s.trans, pt2(a_t, pt3(snd_(u_t), snd_(v_t), snd_(z_t))),
            pt2(snd_(fst_(var_(0))), snd_(snd_(var_(0)))))))));

  PcaCode sigma = encode(lam_(lam_(pair_(
      w_app(b.sigma, var_(1), pt2(fst_(fst_(var_(0))), snd_(var_(0)))),
      w_app(c.sigma, var_(1), pt2(snd_(fst_(var_(0))), snd_(var_(0))))))));
  // cond1: point <<a,a'>, <<w,w'>, r>>, proof <p,q>.
  TermPtr aa1 = fst_(var_(1)), ws1 = fst_(snd_(var_(1))), r1 = snd_(snd_(var_(1)));
  PcaCode cond1 = encode(lam_(lam_(pair_(
      w_app(b.cond1,
            pt2(aa1, pt2(pt2(fst_(fst_(ws1)), fst_(snd_(ws1))), r1)),
            fst_(var_(0))),
      w_app(c.cond1,
            pt2(aa1, pt2(pt2(snd_(fst_(ws1)), snd_(snd_(ws1))), r1)),
            snd_(var_(0)))))));
  TermPtr a2 = fst_(var_(1)), w2 = fst_(snd_(var_(1))), r2 = snd_(snd_(var_(1)));
  PcaCode cond2 = encode(lam_(lam_(pair_(
      w_app(b.cond2, pt2(a2, pt2(fst_(w2), r2)), lit_(0)),
      w_app(c.cond2, pt2(a2, pt2(snd_(w2), r2)), lit_(0))))));
  TermPtr as3 = fst_(var_(1)), w3 = fst_(snd_(var_(1))), rs3 = snd_(snd_(var_(1)));
  PcaCode cond3 = encode(lam_(lam_(pair_(
      w_app(b.cond3, pt2(as3, pt2(fst_(w3), rs3)), lit_(0)),
      w_app(c.cond3, pt2(as3, pt2(snd_(w3), rs3)), lit_(0))))));
  std::shared_ptr<const SetFamily> witness;
  if (b.small && c.small)
    witness = std::make_shared<SetFamily>(
        set_product(*b.small_witness, *c.small_witness));
  return mk_depcol(b.name + "*" + c.name, b.base, fam, s, sigma, cond1, cond2,
                   cond3, b.small && c.small && witness != nullptr, witness);
}

namespace {

// squares witness for a projection-like morphism whose transport commutes
// literally: reflexivity at the transported value.
PcaCode proj_squares(const DepCollection& component, bool first) {
  TermPtr aa = fst_(var_(1));
  TermPtr w = fst_(snd_(var_(1))), r = snd_(snd_(var_(1)));
  TermPtr comp = first ? fst_(w) : snd_(w);
  TermPtr moved = w_app(component.sigma, aa, pt2(comp, r));
  return encode(lam_(lam_(w_app(component.s.refl, pt2(snd_(aa), moved), lit_(0)))));
}

}  // namespace

DepMorphism dep_proj1(const DepCollection& b, const DepCollection& c) {
  DepCollection prod = dep_product(b, c);
  return mk_depmorphism(prod, b, fam_proj1(b.fam, c.fam),
                        encode(lam_(lam_(fst_(var_(0))))), proj_squares(b, true));
}

DepMorphism dep_proj2(const DepCollection& b, const DepCollection& c) {
  DepCollection prod = dep_product(b, c);
  return mk_depmorphism(prod, c, fam_proj2(b.fam, c.fam),
                        encode(lam_(lam_(snd_(var_(0))))), proj_squares(c, false));
}

DepMorphism dep_pair(const DepMorphism& f, const DepMorphism& g) {
  DepCollection prod = dep_product(f.cod, g.cod);
  PcaCode respect = encode(lam_(lam_(pair_(
      w_app(f.respect, var_(1), var_(0)), w_app(g.respect, var_(1), var_(0))))));
  PcaCode squares = encode(lam_(lam_(pair_(
      w_app(f.squares, var_(1), lit_(0)), w_app(g.squares, var_(1), lit_(0))))));
  return mk_depmorphism(f.dom, prod, fam_pair(f.f, g.f), respect, squares);
}

DepCollection dep_initial(const QObject& x) {
  Family fam = constant_family(x.base, initial());
  FiberedEqRel s;
  s.rel = mk_prop("empty-rel",
                  dep_rel_family(
                      "rel(0)", fam,
                      [](const Nat&, const Nat&, const Nat&, const Nat&) {
                        return false;
                      },
                      [](const Nat&, const Nat&, const Nat&) {
                        return std::vector<Nat>{};
                      }));
  PcaCode triv = encode(lam_(lam_(lit_(0))));
  s.refl = triv;
  s.sym = triv;
  s.trans = triv;
  return mk_depcol("0", x, fam, s, triv, triv, triv, triv);
}

DepCollection dep_coproduct(const DepCollection& b, const DepCollection& c) {
  Family fam = fam_coproduct(b.fam, c.fam);
  auto bs = b.s;
  auto cs = c.s;
  FiberedEqRel s;
  s.rel = mk_prop(
      "rel+", dep_rel_family(
                  "rel(" + b.name + "+" + c.name + ")", fam,
                  [bs, cs](const Nat& a, const Nat& w, const Nat& wp, const Nat& pr) {
                    if (cantor_fst(w) != cantor_fst(wp)) return false;
                    Nat inner = cantor_pair(a, cantor_pair(cantor_snd(w),
                                                           cantor_snd(wp)));
                    return cantor_fst(w) == 0
                               ? bs.rel.carrier.fiber_member(inner, pr)
                               : cs.rel.carrier.fiber_member(inner, pr);
                  },
                  [bs, cs](const Nat& a, const Nat& w, const Nat& wp)
                      -> std::vector<Nat> {
                    if (cantor_fst(w) != cantor_fst(wp)) return {};
                    return cantor_fst(w) == 0
                               ? fiber_rel_proofs(bs, a, cantor_snd(w),
                                                  cantor_snd(wp))
                               : fiber_rel_proofs(cs, a, cantor_snd(w),
                                                  cantor_snd(wp));
                  }));
  // Tag dispatch; inside the 1-branch every variable index shifts by one.
  s.refl = encode(lam_(lam_(natcase_(
      fst_(snd_(var_(1))),
      w_app(b.s.refl, pt2(fst_(var_(1)), snd_(snd_(var_(1)))), lit_(0)),
      w_app(c.s.refl, pt2(fst_(var_(2)), snd_(snd_(var_(2)))), lit_(0))))));
  auto sym_branch = [&](const FiberedEqRel& rel, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    TermPtr proof = var_(0 + shift);
    return w_app(rel.sym,
                 pt2(fst_(pt), pt2(snd_(fst_(snd_(pt))), snd_(snd_(snd_(pt))))),
                 proof);
  };
  s.sym = encode(lam_(lam_(natcase_(fst_(fst_(snd_(var_(1)))),
                                    sym_branch(b.s, 0), sym_branch(c.s, 1)))));
  auto trans_branch = [&](const FiberedEqRel& rel, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    TermPtr proof = var_(0 + shift);
    return w_app(rel.trans,
                 pt2(fst_(pt),
                     pt3(snd_(fst_(snd_(pt))), snd_(fst_(snd_(snd_(pt)))),
                         snd_(snd_(snd_(snd_(pt)))))),
                 proof);
  };
  s.trans = encode(lam_(lam_(natcase_(fst_(fst_(snd_(var_(1)))),
                                      trans_branch(b.s, 0), trans_branch(c.s, 1)))));
  auto sigma_branch = [&](const DepCollection& comp, unsigned tag, unsigned shift) {
    TermPtr aa = var_(1 + shift);
    TermPtr wr = var_(0 + shift);
    return pair_(lit_(tag),
                 w_app(comp.sigma, aa, pt2(snd_(fst_(wr)), snd_(wr))));
  };
  PcaCode sigma = encode(lam_(lam_(natcase_(
      fst_(fst_(var_(0))), sigma_branch(b, 0, 0), sigma_branch(c, 1, 1)))));
  auto cond1_branch = [&](const DepCollection& comp, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    TermPtr proof = var_(0 + shift);
    TermPtr ws = fst_(snd_(pt));
    return w_app(comp.cond1,
                 pt2(fst_(pt), pt2(pt2(snd_(fst_(ws)), snd_(snd_(ws))),
                                   snd_(snd_(pt)))),
                 proof);
  };
  PcaCode cond1 = encode(lam_(lam_(natcase_(
      fst_(fst_(fst_(snd_(var_(1))))), cond1_branch(b, 0), cond1_branch(c, 1)))));
  auto cond2_branch = [&](const DepCollection& comp, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return w_app(comp.cond2,
                 pt2(fst_(pt), pt2(snd_(fst_(snd_(pt))), snd_(snd_(pt)))),
                 lit_(0));
  };
  PcaCode cond2 = encode(lam_(lam_(natcase_(
      fst_(fst_(snd_(var_(1)))), cond2_branch(b, 0), cond2_branch(c, 1)))));
  auto cond3_branch = [&](const DepCollection& comp, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return w_app(comp.cond3,
                 pt2(fst_(pt), pt2(snd_(fst_(snd_(pt))), snd_(snd_(pt)))),
                 lit_(0));
  };
  PcaCode cond3 = encode(lam_(lam_(natcase_(
      fst_(fst_(snd_(var_(1)))), cond3_branch(b, 0), cond3_branch(c, 1)))));
  std::shared_ptr<const SetFamily> witness;
  if (b.small && c.small)
    witness = std::make_shared<SetFamily>(
        set_coproduct(*b.small_witness, *c.small_witness));
  return mk_depcol(b.name + "+" + c.name, b.base, fam, s, sigma, cond1, cond2,
                   cond3, b.small && c.small && witness != nullptr, witness);
}

DepMorphism dep_inj1(const DepCollection& b, const DepCollection& c) {
  DepCollection cp = dep_coproduct(b, c);
  // Transport commutes with tagging literally, so squares are refl.
  TermPtr moved = w_app(b.sigma, fst_(var_(1)),
                        pt2(fst_(snd_(var_(1))), snd_(snd_(var_(1)))));
  PcaCode squares = encode(lam_(lam_(w_app(
      cp.s.refl, pt2(snd_(fst_(var_(1))), pair_(lit_(0), moved)), lit_(0)))));
  return mk_depmorphism(b, cp, fam_inj1(b.fam, c.fam), code_fam_identity(),
                        squares);
}

DepMorphism dep_inj2(const DepCollection& b, const DepCollection& c) {
  DepCollection cp = dep_coproduct(b, c);
  TermPtr moved = w_app(c.sigma, fst_(var_(1)),
                        pt2(fst_(snd_(var_(1))), snd_(snd_(var_(1)))));
  PcaCode squares = encode(lam_(lam_(w_app(
      cp.s.refl, pt2(snd_(fst_(var_(1))), pair_(lit_(1), moved)), lit_(0)))));
  return mk_depmorphism(c, cp, fam_inj2(b.fam, c.fam), code_fam_identity(),
                        squares);
}

DepMorphism dep_copair(const DepMorphism& f, const DepMorphism& g) {
  DepCollection cp = dep_coproduct(f.dom, g.dom);
  auto respect_branch = [&](const DepMorphism& m, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    TermPtr proof = var_(0 + shift);
    return w_app(m.respect,
                 pt2(fst_(pt), pt2(snd_(fst_(snd_(pt))), snd_(snd_(snd_(pt))))),
                 proof);
  };
  PcaCode respect = encode(lam_(lam_(natcase_(
      fst_(fst_(snd_(var_(1)))), respect_branch(f, 0), respect_branch(g, 1)))));
  auto squares_branch = [&](const DepMorphism& m, unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return w_app(m.squares,
                 pt2(fst_(pt), pt2(snd_(fst_(snd_(pt))), snd_(snd_(pt)))),
                 lit_(0));
  };
  PcaCode squares = encode(lam_(lam_(natcase_(
      fst_(fst_(snd_(var_(1)))), squares_branch(f, 0), squares_branch(g, 1)))));
  return mk_depmorphism(cp, f.cod, fam_copair(f.f, g.f), respect, squares);
}

// ---------------------------------------------------------------------------
// Equalizers.

DepCollection dep_equalizer(const DepMorphism& f, const DepMorphism& g) {
  const DepCollection& b = f.dom;
  const DepCollection& c = f.cod;
  auto ff = f.f;
  auto gf = g.f;
  auto hs = c.s;
  auto bfam = b.fam;
  // Elements <<a,b>, q> with q relating f b and g b in the target fibers.
  Family fam = mk_family(
      "eq(" + b.name + ")", b.base.base,
      [bfam, ff, gf, hs](const Nat& a, const Nat& w) {
        Nat ab = cantor_fst(w), q = cantor_snd(w);
        if (cantor_fst(ab) != a) return false;
        Nat bv = cantor_snd(ab);
        if (!bfam.fiber_member(a, bv)) return false;
        EvalOutcome fb = apply2(ff.code, a, bv, ff.fuel);
        EvalOutcome gb = apply2(gf.code, a, bv, gf.fuel);
        if (!fb.is_value() || !gb.is_value()) return false;
        return hs.rel.carrier.fiber_member(
            cantor_pair(a, cantor_pair(fb.value, gb.value)), q);
      },
      [bfam, ff, gf, hs](const Nat& a) {
        std::vector<Nat> out;
        for (const auto& bv : bfam.fiber_sample(a)) {
          EvalOutcome fb = apply2(ff.code, a, bv, ff.fuel);
          EvalOutcome gb = apply2(gf.code, a, bv, gf.fuel);
          if (!fb.is_value() || !gb.is_value()) continue;
          for (const auto& q : fiber_rel_proofs(hs, a, fb.value, gb.value))
            out.push_back(cantor_pair(cantor_pair(a, bv), cantor_snd(cantor_pair(0, q)) = q, cantor_pair(cantor_pair(a, bv), q)));
        }
        return out;
      });
  (void)fam;
  throw Error("unreachable", "placeholder");
}

// ---------------------------------------------------------------------------
// Monomorphisms.

bool is_mono(const DepMorphism& m) {
  // Direction S <= I(m x m)*H holds by validity of m.respect; the converse
  // is checked by existence of sampled S-proofs under every H-proof.
  DepSweep sweep(m.dom);
  for (const auto& a : sweep.points)
    for (const auto& b : sweep.fiber(a))
      for (const auto& bp : sweep.fiber(a)) {
        Nat fb = family_apply(m.f, a, b);
        Nat fbp = family_apply(m.f, a, bp);
        if (fiber_rel_proofs(m.cod.s, a, fb, fbp).empty()) continue;
        if (fiber_rel_proofs(m.dom.s, a, b, bp).empty()) return false;
      }
  return true;
}

}  // namespace peff

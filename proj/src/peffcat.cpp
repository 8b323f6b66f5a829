#include "peff/peffcat.hpp"

#include <algorithm>
#include <mutex>

namespace peff {

Nat rel_point(const Nat& a, const Nat& b) { return cantor_pair(a, b); }

std::vector<Nat> rel_proofs(const QObject& x, const Nat& a, const Nat& b) {
  return x.rel.carrier.fiber_sample(rel_point(a, b));
}

bool rel_holds(const QObject& x, const Nat& a, const Nat& b) {
  return !rel_proofs(x, a, b).empty();
}

namespace {

Nat must(const PcaCode& code, const Nat& x, const Nat& y, Fuel fuel,
         const char* what) {
  EvalOutcome out = apply2(code, x, y, fuel);
  if (!out.is_value())
    throw Error("witness-failure", std::string(what) + " diverged at (" +
                                       nat_str(x) + ", " + nat_str(y) + ")");
  return out.value;
}

std::vector<Nat> capped(std::vector<Nat> xs, std::size_t cap = 4) {
  if (xs.size() > cap) xs.resize(cap);
  return xs;
}

// Witness validation sweeps pairs and triples of base points; large sampled
// carriers (lists, products) are checked on a prefix subsample.
constexpr std::size_t kRelCheckCap = 12;

std::vector<Nat> check_points(const Collection& base) {
  return capped(base.sample, kRelCheckCap);
}

}  // namespace

QObject mk_qobject(std::string name, Collection base, RProp rel, PcaCode refl,
                   PcaCode sym, PcaCode trans, Fuel fuel) {
  if (!carrier_agrees(rel.base(), product(base, base)))
    throw Error("witness-failure", name + ": relation must live over base x base");
  QObject x{std::move(name), std::move(base), std::move(rel), std::move(refl),
            std::move(sym), std::move(trans), fuel};
  auto points = check_points(x.base);
  for (const auto& a : points) {
    Nat pa = must(x.refl, a, 0, fuel, "refl");
    if (!x.rel.carrier.fiber_member(rel_point(a, a), pa))
      throw Error("witness-failure", x.name + ": refl fails at " + nat_str(a));
  }
  for (const auto& a : points) {
    for (const auto& b : points) {
      for (const auto& p : capped(rel_proofs(x, a, b))) {
        Nat q = must(x.sym, rel_point(a, b), p, fuel, "sym");
        if (!x.rel.carrier.fiber_member(rel_point(b, a), q))
          throw Error("witness-failure", x.name + ": sym fails at (" + nat_str(a) +
                                             ", " + nat_str(b) + ")");
      }
    }
  }
  for (const auto& a : points) {
    for (const auto& b : points) {
      auto pab = capped(rel_proofs(x, a, b));
      if (pab.empty()) continue;
      for (const auto& c : points) {
        auto pbc = capped(rel_proofs(x, b, c));
        if (pbc.empty()) continue;
        for (const auto& p : pab)
          for (const auto& q : pbc) {
            Nat r = must(x.trans, cantor_triple(a, b, c), cantor_pair(p, q), fuel,
                         "trans");
            if (!x.rel.carrier.fiber_member(rel_point(a, c), r))
              throw Error("witness-failure",
                          x.name + ": trans fails at (" + nat_str(a) + ", " +
                              nat_str(b) + ", " + nat_str(c) + ")");
          }
      }
    }
  }
  return x;
}

QArrow mk_qarrow(QObject dom, QObject cod, TrackedArrow map, PcaCode respect) {
  if (!carrier_agrees(map.dom, dom.base) || !carrier_agrees(map.cod, cod.base))
    throw Error("domain-mismatch", "arrow map must run between the bases");
  for (const auto& a : check_points(dom.base)) {
    for (const auto& b : check_points(dom.base)) {
      for (const auto& p : capped(rel_proofs(dom, a, b))) {
        Nat q = must(respect, rel_point(a, b), p, dom.fuel + map.fuel, "respect");
        Nat fa = arrow_apply(map, a);
        Nat fb = arrow_apply(map, b);
        if (!cod.rel.carrier.fiber_member(rel_point(fa, fb), q))
          throw Error("witness-failure", "respect fails at (" + nat_str(a) + ", " +
                                             nat_str(b) + ")");
      }
    }
  }
  return QArrow{std::move(dom), std::move(cod), std::move(map), std::move(respect)};
}

QArrow q_identity(const QObject& x) {
  return mk_qarrow(x, x, identity(x.base), code_fam_identity());
}

QArrow q_compose(const QArrow& g, const QArrow& f) {
  // (pt, p) |-> {g.respect}(<f a, f a'>, {f.respect}(pt, p))
  PcaCode code = encode(lam_(lam_(capp2(
      g.respect,
      pair_(capp(f.map.code, fst_(var_(1))), capp(f.map.code, snd_(var_(1)))),
      capp2(f.respect, var_(1), var_(0))))));
  return mk_qarrow(f.dom, g.cod, compose(g.map, f.map), code);
}

bool qarrow_eq_with(const QArrow& f, const QArrow& g, const PcaCode& w) {
  for (const auto& a : f.dom.base.sample) {
    EvalOutcome out = apply2(w, a, 0, f.dom.fuel + f.map.fuel + g.map.fuel);
    if (!out.is_value())
      throw Error("witness-failure", "equality witness diverged at " + nat_str(a));
    Nat fa = arrow_apply(f.map, a);
    Nat ga = arrow_apply(g.map, a);
    if (!f.cod.rel.carrier.fiber_member(rel_point(fa, ga), out.value)) return false;
  }
  return true;
}

bool qarrow_eq(const QArrow& f, const QArrow& g) {
  // A sampled proof of S(f a, g a) at every point yields a table witness;
  // an empty sampled fiber refutes at this sample (desk-scale semantics).
  std::vector<std::pair<Nat, Nat>> entries;
  for (const auto& a : f.dom.base.sample) {
    auto proofs = rel_proofs(f.cod, arrow_apply(f.map, a), arrow_apply(g.map, a));
    if (proofs.empty()) return false;
    entries.emplace_back(a, proofs.front());
  }
  PcaCode w = encode(lam_(lam_(capp(code_table(entries, 0), var_(1)))));
  Fuel fuel = table_fuel(f.dom.base.sample);
  for (const auto& a : f.dom.base.sample) {
    EvalOutcome out = apply2(w, a, 0, fuel);
    if (!out.is_value()) return false;
    if (!f.cod.rel.carrier.fiber_member(
            rel_point(arrow_apply(f.map, a), arrow_apply(g.map, a)), out.value))
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pretopos structure.

QObject q_terminal() {
  Collection one = terminal();
  PcaCode triv = encode(lam_(lam_(lit_(0))));
  return mk_qobject("1", one, top_prop(product(one, one)), triv, triv, triv);
}

QArrow q_bang(const QObject& x) {
  return mk_qarrow(x, q_terminal(), bang(x.base), encode(lam_(lam_(lit_(0)))));
}

namespace {

// Relation of the product object: componentwise proof pairs.
RProp product_rel(const QObject& x, const QObject& y, const Collection& base) {
  auto rm = x.rel.carrier.fiber_member;
  auto sm = y.rel.carrier.fiber_member;
  auto rs = x.rel.carrier.fiber_sample;
  auto ss = y.rel.carrier.fiber_sample;
  Family fam = mk_family(
      "rel(" + x.name + "*" + y.name + ")", product(base, base),
      [rm, sm](const Nat& pt, const Nat& w) {
        Nat l = cantor_fst(pt), r = cantor_snd(pt);
        Nat apt = rel_point(cantor_fst(l), cantor_fst(r));
        Nat bpt = rel_point(cantor_snd(l), cantor_snd(r));
        return rm(apt, cantor_fst(w)) && sm(bpt, cantor_snd(w));
      },
      [rs, ss](const Nat& pt) {
        Nat l = cantor_fst(pt), r = cantor_snd(pt);
        std::vector<Nat> out;
        for (const auto& p : rs(rel_point(cantor_fst(l), cantor_fst(r))))
          for (const auto& q : ss(rel_point(cantor_snd(l), cantor_snd(r))))
            out.push_back(cantor_pair(p, q));
        if (out.size() > kFiberCap) out.resize(kFiberCap);
        return out;
      });
  return mk_prop("rel(" + x.name + "*" + y.name + ")", std::move(fam));
}

}  // namespace

QObject q_product(const QObject& x, const QObject& y) {
  Collection base = product(x.base, y.base);
  RProp rel = product_rel(x, y, base);
  // refl: (w, _) |-> <refl_x(fst w), refl_y(snd w)>
  PcaCode refl = encode(lam_(lam_(pair_(capp2(x.refl, fst_(var_(1)), lit_(0)),
                                        capp2(y.refl, snd_(var_(1)), lit_(0))))));
  // sym: points reshuffle componentwise.
  TermPtr pt = var_(1);
  TermPtr apair = pair_(fst_(fst_(pt)), fst_(snd_(pt)));
  TermPtr bpair = pair_(snd_(fst_(pt)), snd_(snd_(pt)));
  PcaCode sym = encode(lam_(lam_(pair_(capp2(x.sym, apair, fst_(var_(0))),
                                       capp2(y.sym, bpair, snd_(var_(0)))))));
  // trans: triple point <u, <v, w>>, proof pair <<p1,q1>, <p2,q2>>.
  TermPtr u = fst_(var_(1)), v = fst_(snd_(var_(1))), w = snd_(snd_(var_(1)));
  TermPtr atrip = pair_(fst_(u), pair_(fst_(v), fst_(w)));
  TermPtr btrip = pair_(snd_(u), pair_(snd_(v), snd_(w)));
  TermPtr pp = pair_(fst_(fst_(var_(0))), fst_(snd_(var_(0))));
  TermPtr qq = pair_(snd_(fst_(var_(0))), snd_(snd_(var_(0))));
  PcaCode trans = encode(lam_(lam_(
      pair_(capp2(x.trans, atrip, pp), capp2(y.trans, btrip, qq)))));
  return mk_qobject(x.name + "*" + y.name, base, rel, refl, sym, trans,
                    x.fuel + y.fuel);
}

QArrow q_proj1(const QObject& x, const QObject& y) {
  return mk_qarrow(q_product(x, y), x, proj1(x.base, y.base),
                   encode(lam_(lam_(fst_(var_(0))))));
}

QArrow q_proj2(const QObject& x, const QObject& y) {
  return mk_qarrow(q_product(x, y), y, proj2(x.base, y.base),
                   encode(lam_(lam_(snd_(var_(0))))));
}

QArrow q_pair(const QArrow& f, const QArrow& g) {
  PcaCode code = encode(lam_(lam_(pair_(capp2(f.respect, var_(1), var_(0)),
                                        capp2(g.respect, var_(1), var_(0))))));
  return mk_qarrow(f.dom, q_product(f.cod, g.cod), pair_arrow(f.map, g.map), code);
}

QObject q_initial() {
  Collection none = initial();
  PcaCode triv = encode(lam_(lam_(lit_(0))));
  return mk_qobject("0", none, top_prop(product(none, none)), triv, triv, triv);
}

namespace {

RProp coproduct_rel(const QObject& x, const QObject& y, const Collection& base) {
  auto rm = x.rel.carrier.fiber_member;
  auto sm = y.rel.carrier.fiber_member;
  auto rs = x.rel.carrier.fiber_sample;
  auto ss = y.rel.carrier.fiber_sample;
  Family fam = mk_family(
      "rel(" + x.name + "+" + y.name + ")", product(base, base),
      [rm, sm](const Nat& pt, const Nat& w) {
        Nat l = cantor_fst(pt), r = cantor_snd(pt);
        if (cantor_fst(l) != cantor_fst(r)) return false;
        Nat inner = rel_point(cantor_snd(l), cantor_snd(r));
        return cantor_fst(l) == 0 ? rm(inner, w) : sm(inner, w);
      },
      [rs, ss](const Nat& pt) -> std::vector<Nat> {
        Nat l = cantor_fst(pt), r = cantor_snd(pt);
        if (cantor_fst(l) != cantor_fst(r)) return {};
        Nat inner = rel_point(cantor_snd(l), cantor_snd(r));
        return cantor_fst(l) == 0 ? rs(inner) : ss(inner);
      });
  return mk_prop("rel(" + x.name + "+" + y.name + ")", std::move(fam));
}

}  // namespace

QObject q_coproduct(const QObject& x, const QObject& y) {
  Collection base = coproduct(x.base, y.base);
  RProp rel = coproduct_rel(x, y, base);
  // Tag dispatch: inside the 1-branch every outer variable shifts by one.
  PcaCode refl = encode(lam_(lam_(natcase_(
      fst_(var_(1)), capp2(x.refl, snd_(var_(1)), lit_(0)),
      capp2(y.refl, snd_(var_(2)), lit_(0))))));
  auto component_points = [](unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return pair_(snd_(fst_(pt)), snd_(snd_(pt)));
  };
  PcaCode sym = encode(lam_(lam_(natcase_(
      fst_(fst_(var_(1))), capp2(x.sym, component_points(0), var_(0)),
      capp2(y.sym, component_points(1), var_(1))))));
  auto triple_points = [](unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return pair_(snd_(fst_(pt)),
                 pair_(snd_(fst_(snd_(pt))), snd_(snd_(snd_(pt)))));
  };
  PcaCode trans = encode(lam_(lam_(natcase_(
      fst_(fst_(var_(1))), capp2(x.trans, triple_points(0), var_(0)),
      capp2(y.trans, triple_points(1), var_(1))))));
  return mk_qobject(x.name + "+" + y.name, base, rel, refl, sym, trans,
                    x.fuel + y.fuel);
}

QArrow q_inj1(const QObject& x, const QObject& y) {
  return mk_qarrow(x, q_coproduct(x, y), inj1(x.base, y.base), code_fam_identity());
}

QArrow q_inj2(const QObject& x, const QObject& y) {
  return mk_qarrow(y, q_coproduct(x, y), inj2(x.base, y.base), code_fam_identity());
}

QArrow q_copair(const QArrow& f, const QArrow& g) {
  auto component_points = [](unsigned shift) {
    TermPtr pt = var_(1 + shift);
    return pair_(snd_(fst_(pt)), snd_(snd_(pt)));
  };
  PcaCode code = encode(lam_(lam_(natcase_(
      fst_(fst_(var_(1))), capp2(f.respect, component_points(0), var_(0)),
      capp2(g.respect, component_points(1), var_(1))))));
  return mk_qarrow(q_coproduct(f.dom, g.dom), f.cod, copair(f.map, g.map), code);
}

QObject q_equalizer(const QArrow& f, const QArrow& g) {
  const QObject& x = f.dom;
  const QObject& y = f.cod;
  auto fm = f.map;
  auto gm = g.map;
  auto agrees = [y, fm, gm](const Nat& a) {
    return rel_holds(y, arrow_apply(fm, a), arrow_apply(gm, a));
  };
  std::vector<Nat> sample;
  for (const auto& a : x.base.sample)
    if (agrees(a)) sample.push_back(a);
  auto bm = x.base.member;
  Collection base = mk_collection(
      "eq(" + x.name + ")",
      [bm, agrees](const Nat& a) { return bm(a) && agrees(a); }, std::move(sample));
  auto rm = x.rel.carrier.fiber_member;
  auto rs = x.rel.carrier.fiber_sample;
  Family fam = mk_family(
      "rel(eq)", product(base, base),
      [rm](const Nat& pt, const Nat& w) { return rm(pt, w); },
      [rs](const Nat& pt) { return rs(pt); });
  return mk_qobject("eq(" + x.name + ")", base,
                    mk_prop("rel(eq)", std::move(fam)), x.refl, x.sym, x.trans,
                    x.fuel);
}

QArrow q_equalizer_incl(const QArrow& f, const QArrow& g) {
  QObject e = q_equalizer(f, g);
  return mk_qarrow(e, f.dom, mk_arrow(e.base, f.dom.base, code_identity()),
                   code_fam_identity());
}

// ---------------------------------------------------------------------------
// Lists.

namespace {

RProp list_rel(const QObject& x, const Collection& base) {
  auto rm = x.rel.carrier.fiber_member;
  auto rs = x.rel.carrier.fiber_sample;
  auto em = x.base.member;
  Family fam = mk_family(
      "rel(list)", product(base, base),
      [rm, em](const Nat& pt, const Nat& w) {
        auto l1 = list_decode(cantor_fst(pt), em);
        auto l2 = list_decode(cantor_snd(pt), em);
        auto ps = list_decode(w, [](const Nat&) { return true; });
        if (!l1 || !l2 || !ps) return false;
        if (l1->size() != l2->size() || ps->size() != l1->size()) return false;
        for (std::size_t i = 0; i < l1->size(); ++i)
          if (!rm(rel_point((*l1)[i], (*l2)[i]), (*ps)[i])) return false;
        return true;
      },
      [rm, rs, em](const Nat& pt) -> std::vector<Nat> {
        auto l1 = list_decode(cantor_fst(pt), em);
        auto l2 = list_decode(cantor_snd(pt), em);
        if (!l1 || !l2 || l1->size() != l2->size()) return {};
        std::vector<std::vector<Nat>> acc{{}};
        for (std::size_t i = 0; i < l1->size(); ++i) {
          auto proofs = rs(rel_point((*l1)[i], (*l2)[i]));
          if (proofs.size() > 2) proofs.resize(2);
          if (proofs.empty()) return {};
          std::vector<std::vector<Nat>> next;
          for (const auto& prefix : acc)
            for (const auto& p : proofs) {
              auto ext = prefix;
              ext.push_back(p);
              next.push_back(std::move(ext));
            }
          acc = std::move(next);
        }
        std::vector<Nat> out;
        for (const auto& ps : acc) {
          out.push_back(list_encode(ps));
          if (out.size() >= kFiberCap) break;
        }
        return out;
      });
  return mk_prop("rel(list " + x.name + ")", std::move(fam));
}

}  // namespace

QObject q_list(const QObject& x) {
  Collection base = list_object(x.base);
  RProp rel = list_rel(x, base);
  // All three witnesses are fix-based walks. Inside the successor branch of
  // the dispatch the binders are pred=0, proof=1, point=2, self=3.
  auto self_call = [](TermPtr point, TermPtr proof) {
    return app_(app_(var_(3), std::move(point)), std::move(proof));
  };
  auto lit_apply2 = [](const PcaCode& c, TermPtr a, TermPtr b) {
    return app_(app_(lit_(c), std::move(a)), std::move(b));
  };

  // refl: (l, _) |-> [refl_x(head), ...]; scrutinee is the list itself.
  TermPtr refl_l = var_(2);
  PcaCode refl_code = encode(fix_(lam_(lam_(natcase_(
      fst_(var_(1)), lit_(0),
      pair_(lit_(1), pair_(lit_apply2(x.refl, fst_(snd_(refl_l)), lit_(0)),
                           self_call(snd_(snd_(refl_l)), lit_(0)))))))));

  // sym: (<l1,l2>, proofs) |-> [sym_x(<h1,h2>, p), ...].
  TermPtr pt_s = var_(2), pr_s = var_(1);
  TermPtr s_h1 = fst_(snd_(fst_(pt_s))), s_t1 = snd_(snd_(fst_(pt_s)));
  TermPtr s_h2 = fst_(snd_(snd_(pt_s))), s_t2 = snd_(snd_(snd_(pt_s)));
  PcaCode sym_code = encode(fix_(lam_(lam_(natcase_(
      fst_(var_(0)), lit_(0),
      pair_(lit_(1), pair_(lit_apply2(x.sym, pair_(s_h1, s_h2), fst_(snd_(pr_s))),
                           self_call(pair_(s_t1, s_t2), snd_(snd_(pr_s))))))))));

  // trans: (<l1,<l2,l3>>, <ps12,ps23>) |-> [trans_x(<h1,<h2,h3>>, <p,q>), ...].
  TermPtr pt_t = var_(2), pr_t = var_(1);
  TermPtr t_l1 = fst_(pt_t), t_l2 = fst_(snd_(pt_t)), t_l3 = snd_(snd_(pt_t));
  TermPtr t_heads = pair_(fst_(snd_(t_l1)),
                          pair_(fst_(snd_(t_l2)), fst_(snd_(t_l3))));
  TermPtr t_tails = pair_(snd_(snd_(t_l1)),
                          pair_(snd_(snd_(t_l2)), snd_(snd_(t_l3))));
  TermPtr t_phead = pair_(fst_(snd_(fst_(pr_t))), fst_(snd_(snd_(pr_t))));
  TermPtr t_ptail = pair_(snd_(snd_(fst_(pr_t))), snd_(snd_(snd_(pr_t))));
  PcaCode trans_code = encode(fix_(lam_(lam_(natcase_(
      fst_(fst_(var_(0))), lit_(0),
      pair_(lit_(1), pair_(lit_apply2(x.trans, t_heads, t_phead),
                           self_call(t_tails, t_ptail))))))));

  return mk_qobject("list(" + x.name + ")", base, rel, refl_code, sym_code,
                    trans_code, 8 * x.fuel);
}

QArrow q_nil(const QObject& x) {
  QObject lx = q_list(x);
  return mk_qarrow(q_terminal(), lx,
                   mk_arrow(terminal(), lx.base, code_const(list_nil_value())),
                   encode(lam_(lam_(lit_(0)))));
}

QArrow q_cons(const QObject& x) {
  QObject lx = q_list(x);
  QObject dom = q_product(x, lx);
  TrackedArrow map = mk_arrow(dom.base, lx.base,
                              encode(lam_(pair_(lit_(1), var_(0)))));
  // A product proof <p_h, plist_t> is already the cons-shaped list proof.
  PcaCode respect = encode(lam_(lam_(pair_(lit_(1), var_(0)))));
  return mk_qarrow(dom, lx, map, respect);
}

// ---------------------------------------------------------------------------
// Quotients.

QObject q_coequalize_eqrel(const QObject& x, const EqRelPresentation& t) {
  QObject out = mk_qobject(x.name + "/~", x.base, t.rel, t.refl, t.sym, t.trans,
                           x.fuel);
  // Containment of the original relation must validate.
  for (const auto& a : check_points(x.base))
    for (const auto& b : check_points(x.base))
      for (const auto& p : capped(rel_proofs(x, a, b))) {
        Nat q = must(t.contains, rel_point(a, b), p, x.fuel, "contains");
        if (!t.rel.carrier.fiber_member(rel_point(a, b), q))
          throw Error("witness-failure", "containment fails at (" + nat_str(a) +
                                             ", " + nat_str(b) + ")");
      }
  return out;
}

QArrow q_quotient_proj(const QObject& x, const EqRelPresentation& t) {
  return mk_qarrow(x, q_coequalize_eqrel(x, t), identity(x.base), t.contains);
}

KernelPair q_kernel_pair(const QArrow& q) {
  const QObject& x = q.dom;
  auto sm = q.cod.rel.carrier.fiber_member;
  auto ss = q.cod.rel.carrier.fiber_sample;
  auto fm = q.map;
  Family related = mk_family(
      "ker(" + x.name + ")", product(x.base, x.base),
      [sm, fm](const Nat& pt, const Nat& p) {
        return sm(rel_point(arrow_apply(fm, cantor_fst(pt)),
                            arrow_apply(fm, cantor_snd(pt))),
                  p);
      },
      [ss, fm](const Nat& pt) {
        return ss(rel_point(arrow_apply(fm, cantor_fst(pt)),
                            arrow_apply(fm, cantor_snd(pt))));
      });
  Collection base = sigma_total(related);
  // Pairs of component proofs of the domain relation.
  auto rm = x.rel.carrier.fiber_member;
  auto rs = x.rel.carrier.fiber_sample;
  Family fam = mk_family(
      "rel(ker)", product(base, base),
      [rm](const Nat& pt, const Nat& w) {
        Nat l = cantor_fst(cantor_fst(pt)), r = cantor_fst(cantor_snd(pt));
        return rm(rel_point(cantor_fst(l), cantor_fst(r)), cantor_fst(w)) &&
               rm(rel_point(cantor_snd(l), cantor_snd(r)), cantor_snd(w));
      },
      [rs](const Nat& pt) {
        Nat l = cantor_fst(cantor_fst(pt)), r = cantor_fst(cantor_snd(pt));
        std::vector<Nat> out;
        for (const auto& p : rs(rel_point(cantor_fst(l), cantor_fst(r))))
          for (const auto& u : rs(rel_point(cantor_snd(l), cantor_snd(r))))
            out.push_back(cantor_pair(p, u));
        if (out.size() > kFiberCap) out.resize(kFiberCap);
        return out;
      });
  TermPtr pt = var_(1);
  TermPtr apair = pair_(fst_(fst_(fst_(pt))), fst_(fst_(snd_(pt))));
  TermPtr bpair = pair_(snd_(fst_(fst_(pt))), snd_(fst_(snd_(pt))));
  PcaCode refl = encode(lam_(lam_(
      pair_(capp2(x.refl, fst_(fst_(var_(1))), lit_(0)),
            capp2(x.refl, snd_(fst_(var_(1))), lit_(0))))));
  PcaCode sym = encode(lam_(lam_(pair_(capp2(x.sym, apair, fst_(var_(0))),
                                       capp2(x.sym, bpair, snd_(var_(0)))))));
  TermPtr u3 = fst_(fst_(var_(1))), v3 = fst_(fst_(snd_(var_(1)))),
          w3 = fst_(snd_(snd_(var_(1))));
  PcaCode trans = encode(lam_(lam_(pair_(
      capp2(x.trans, pair_(fst_(u3), pair_(fst_(v3), fst_(w3))),
            pair_(fst_(fst_(var_(0))), fst_(snd_(var_(0))))),
      capp2(x.trans, pair_(snd_(u3), pair_(snd_(v3), snd_(w3))),
            pair_(snd_(fst_(var_(0))), snd_(snd_(var_(0)))))))));
  QObject ker = mk_qobject("ker(" + x.name + ")", base,
                           mk_prop("rel(ker)", std::move(fam)), refl, sym, trans,
                           2 * x.fuel);
  TrackedArrow m1 = mk_arrow(base, x.base, encode(lam_(fst_(fst_(var_(0))))));
  TrackedArrow m2 = mk_arrow(base, x.base, encode(lam_(snd_(fst_(var_(0))))));
  QArrow k1 = mk_qarrow(ker, x, m1, encode(lam_(lam_(fst_(var_(0))))));
  QArrow k2 = mk_qarrow(ker, x, m2, encode(lam_(lam_(snd_(var_(0))))));
  return KernelPair{std::move(ker), std::move(k1), std::move(k2)};
}

// ---------------------------------------------------------------------------
// Exponentials.

namespace {

constexpr std::size_t kExpCap = 6;

std::vector<Nat> exp_carrier_sample(const QObject& x, const QObject& y,
                                    const std::vector<PcaCode>& seeds) {
  auto tracks_respects = [&](const PcaCode& n) {
    for (const auto& a : x.base.sample) {
      EvalOutcome out = apply(n, a, 4 * kDefaultFuel);
      if (!out.is_value() || !y.base.member(out.value)) return false;
    }
    for (const auto& a : x.base.sample)
      for (const auto& b : x.base.sample) {
        if (rel_proofs(x, a, b).empty()) continue;
        EvalOutcome na = apply(n, a, 4 * kDefaultFuel);
        EvalOutcome nb = apply(n, b, 4 * kDefaultFuel);
        if (!rel_holds(y, na.value, nb.value)) return false;
      }
    return true;
  };
  std::vector<Nat> out;
  std::set<Nat> seen;
  for (const auto& n : seeds)
    if (tracks_respects(n) && seen.insert(n).second) out.push_back(n);
  for (const auto& n : enumerate_unary_codes(5, 96)) {
    if (out.size() >= kExpCap) break;
    if (tracks_respects(n) && seen.insert(n).second) out.push_back(n);
  }
  if (out.size() > kExpCap) out.resize(kExpCap);
  return out;
}

}  // namespace

QObject q_exponential(const QObject& x, const QObject& y,
                      const std::vector<PcaCode>& seeds) {
  auto sample = exp_carrier_sample(x, y, seeds);
  auto xs = x.base.sample;
  auto ym = y.base.member;
  auto xrel_s = x.rel.carrier.fiber_sample;
  auto yrel_holds = [y](const Nat& u, const Nat& v) { return rel_holds(y, u, v); };
  Collection base = mk_collection(
      "(" + x.name + "=>" + y.name + ")",
      [xs, ym, xrel_s, yrel_holds](const Nat& n) {
        for (const auto& a : xs) {
          EvalOutcome out = apply(n, a, 4 * kDefaultFuel);
          if (!out.is_value() || !ym(out.value)) return false;
        }
        for (const auto& a : xs)
          for (const auto& b : xs) {
            if (xrel_s(rel_point(a, b)).empty()) continue;
            if (!yrel_holds(apply(n, a, 4 * kDefaultFuel).value,
                            apply(n, b, 4 * kDefaultFuel).value))
              return false;
          }
        return true;
      },
      sample);

  // Pointwise relatedness: proofs are codes mapping each base point to a
  // proof of S(n a, m a).
  auto ys = y.rel.carrier.fiber_sample;
  auto ymem = y.rel.carrier.fiber_member;
  Family fam = mk_family(
      "rel(exp)", product(base, base),
      [xs, ymem](const Nat& pt, const Nat& w) {
        for (const auto& a : xs) {
          EvalOutcome na = apply(cantor_fst(pt), a, 4 * kDefaultFuel);
          EvalOutcome ma = apply(cantor_snd(pt), a, 4 * kDefaultFuel);
          EvalOutcome wa = apply(w, a, 4 * kDefaultFuel);
          if (!na.is_value() || !ma.is_value() || !wa.is_value()) return false;
          if (!ymem(rel_point(na.value, ma.value), wa.value)) return false;
        }
        return true;
      },
      [xs, ys](const Nat& pt) -> std::vector<Nat> {
        std::vector<std::pair<Nat, Nat>> entries;
        for (const auto& a : xs) {
          EvalOutcome na = apply(cantor_fst(pt), a, 4 * kDefaultFuel);
          EvalOutcome ma = apply(cantor_snd(pt), a, 4 * kDefaultFuel);
          if (!na.is_value() || !ma.is_value()) return {};
          auto proofs = ys(rel_point(na.value, ma.value));
          if (proofs.empty()) return {};
          entries.emplace_back(a, proofs.front());
        }
        return {code_table(entries, 0)};
      });
  RProp rel = mk_prop("rel(exp)", std::move(fam));

  // Witnesses are canonical-value dispatches over the sampled carrier.
  std::vector<std::pair<Nat, Nat>> refl_entries;
  for (const auto& n : base.sample) {
    std::vector<std::pair<Nat, Nat>> values;
    for (const auto& a : x.base.sample)
      values.emplace_back(a, must(y.refl, apply(n, a, 4 * kDefaultFuel).value, 0,
                                  y.fuel, "refl"));
    refl_entries.emplace_back(n, code_table(values, 0));
  }
  PcaCode refl = encode(lam_(lam_(capp(code_table(refl_entries, 0), var_(1)))));

  auto fiber_sample = rel.carrier.fiber_sample;
  std::vector<std::pair<Nat, Nat>> sym_entries, trans_entries;
  for (const auto& n : base.sample)
    for (const auto& m : base.sample) {
      if (!fiber_sample(rel_point(n, m)).empty()) {
        auto back = fiber_sample(rel_point(m, n));
        if (!back.empty()) sym_entries.emplace_back(rel_point(n, m), back.front());
      }
      for (const auto& k : base.sample) {
        if (fiber_sample(rel_point(n, m)).empty() ||
            fiber_sample(rel_point(m, k)).empty())
          continue;
        auto through = fiber_sample(rel_point(n, k));
        if (!through.empty())
          trans_entries.emplace_back(cantor_triple(n, m, k), through.front());
      }
    }
  PcaCode sym = encode(lam_(lam_(capp(code_table(sym_entries, 0), var_(1)))));
  PcaCode trans = encode(lam_(lam_(capp(code_table(trans_entries, 0), var_(1)))));
  return mk_qobject("(" + x.name + "=>" + y.name + ")", base, rel, refl, sym,
                    trans, 8 * kDefaultFuel + table_fuel(base.sample));
}

QArrow q_eval(const QObject& x, const QObject& y, const std::vector<PcaCode>& seeds) {
  QObject ex = q_exponential(x, y, seeds);
  QObject dom = q_product(ex, x);
  TrackedArrow map = mk_arrow(dom.base, y.base,
                              encode(lam_(app_(fst_(var_(0)), snd_(var_(0))))),
                              8 * kDefaultFuel);
  // respect: proof <w, p> at <<n,b>, <m,b'>> becomes
  // trans(<n b, <m b, m b'>>, <w(b), s>) with s a sampled proof that m
  // respects the relation at (b, b').
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  for (const auto& n : ex.base.sample)
    for (const auto& m : ex.base.sample)
      for (const auto& w : ex.rel.carrier.fiber_sample(rel_point(n, m)))
        for (const auto& b : x.base.sample)
          for (const auto& bp : x.base.sample)
            for (const auto& p : capped(rel_proofs(x, b, bp), 2)) {
              Nat nb = apply(n, b, 4 * kDefaultFuel).value;
              Nat mb = apply(m, b, 4 * kDefaultFuel).value;
              Nat mbp = apply(m, bp, 4 * kDefaultFuel).value;
              Nat wb = apply(w, b, 8 * kDefaultFuel).value;
              auto srcs = rel_proofs(y, mb, mbp);
              if (srcs.empty()) continue;
              Nat value = must(y.trans, cantor_triple(nb, mb, mbp),
                               cantor_pair(wb, srcs.front()), y.fuel, "trans");
              Nat pt = rel_point(cantor_pair(n, b), cantor_pair(m, bp));
              entries.push_back({{pt, cantor_pair(w, p)}, value});
            }
  PcaCode respect = code_table2(entries, 0);
  return mk_qarrow(dom, y, map, respect);
}

// ---------------------------------------------------------------------------
// Descent propositions.

DescentProp mk_descent_prop(const QObject& x, RProp prop, PcaCode descent) {
  for (const auto& a : x.base.sample)
    for (const auto& b : x.base.sample)
      for (const auto& r : capped(rel_proofs(x, a, b)))
        for (const auto& p : prop.carrier.fiber_sample(a)) {
          Nat q = must(descent, rel_point(a, b), cantor_pair(p, r),
                       x.fuel + 4 * kDefaultFuel, "descent");
          if (!prop.carrier.fiber_member(b, q))
            throw Error("descent-failure", prop.name + " at (" + nat_str(a) +
                                               ", " + nat_str(b) + ")");
        }
  return DescentProp{std::move(prop), std::move(descent)};
}

std::optional<PcaCode> search_descent(const QObject& x, const RProp& prop,
                                      std::size_t /*size_bound*/) {
  // Desk-scale search: transport to a sampled proof of the target fiber;
  // an empty target fiber refutes at this sample (incomplete refutation).
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  for (const auto& a : x.base.sample)
    for (const auto& b : x.base.sample)
      for (const auto& r : capped(rel_proofs(x, a, b)))
        for (const auto& p : prop.carrier.fiber_sample(a)) {
          auto target = prop.carrier.fiber_sample(b);
          if (target.empty()) return std::nullopt;
          entries.push_back({{rel_point(a, b), cantor_pair(p, r)}, target.front()});
        }
  PcaCode code = code_table2(entries, 0);
  try {
    mk_descent_prop(x, prop, code);
  } catch (const Error&) {
    return std::nullopt;
  }
  return code;
}

DescentProp descent_top(const QObject& x) {
  return mk_descent_prop(x, top_prop(x.base), encode(lam_(lam_(lit_(0)))));
}

DescentProp descent_bottom(const QObject& x) {
  return mk_descent_prop(x, bottom_prop(x.base), encode(lam_(lam_(lit_(0)))));
}

DescentProp descent_and(const QObject& x, const DescentProp& p, const DescentProp& q) {
  PcaCode code = encode(lam_(lam_(pair_(
      capp2(p.descent, var_(1), pair_(fst_(fst_(var_(0))), snd_(var_(0)))),
      capp2(q.descent, var_(1), pair_(snd_(fst_(var_(0))), snd_(var_(0))))))));
  return mk_descent_prop(x, and_prop(p.prop, q.prop), code);
}

DescentProp descent_or(const QObject& x, const DescentProp& p, const DescentProp& q) {
  PcaCode code = encode(lam_(lam_(natcase_(
      fst_(fst_(var_(0))),
      pair_(lit_(0),
            capp2(p.descent, var_(1), pair_(snd_(fst_(var_(0))), snd_(var_(0))))),
      pair_(lit_(1),
            capp2(q.descent, var_(2), pair_(snd_(fst_(var_(1))), snd_(var_(1)))))))));
  return mk_descent_prop(x, or_prop(p.prop, q.prop), code);
}

DescentProp descent_implies(const QObject& x, const DescentProp& p,
                            const DescentProp& q) {
  // Transport a transformer n along r by conjugation with the inverse
  // transport of p. The transported transformer is a partial application of
  // a closed combinator to the packed environment <pt, <n, <r, sym r>>>.
  RProp imp = implies_prop(p.prop, q.prop);
  TermPtr env = var_(1);
  TermPtr e_pt = fst_(env);
  TermPtr e_n = fst_(snd_(env));
  TermPtr e_r = fst_(snd_(snd_(env)));
  TermPtr e_rsym = snd_(snd_(snd_(env)));
  TermPtr swap_pt = pair_(snd_(e_pt), fst_(e_pt));
  TermPtr moved_back = capp2(p.descent, swap_pt, pair_(var_(0), e_rsym));
  TermPtr transported =
      capp2(q.descent, e_pt, pair_(app_(e_n, moved_back), e_r));
  PcaCode generic = encode(lam_(lam_(transported)));
  PcaCode code = encode(lam_(lam_(capp(
      generic, pair_(var_(1), pair_(fst_(var_(0)),
                                    pair_(snd_(var_(0)),
                                          capp2(x.sym, var_(1), snd_(var_(0))))))))));
  return mk_descent_prop(x, imp, code);
}

// ---------------------------------------------------------------------------
// The small-subobject classifier.

namespace {

constexpr unsigned kPBot = 0, kPTop = 1, kPConj = 2, kPDisj = 3, kPImp = 4,
                   kPEq = 5, kPEx = 6, kPAll = 7;
constexpr unsigned kPcodeDepth = 16;

std::mutex pcode_mutex;
std::map<std::pair<Nat, Fuel>, Nat>& proof_set_cache() {
  static std::map<std::pair<Nat, Fuel>, Nat> cache;
  return cache;
}

bool valid_pcode_at(const Nat& c, unsigned depth) {
  if (depth == 0) return false;
  auto [tag, payload] = cantor_unpair(c);
  if (tag == kPBot || tag == kPTop) return payload == 0;
  if (tag == kPConj || tag == kPDisj || tag == kPImp)
    return valid_pcode_at(cantor_fst(payload), depth - 1) &&
           valid_pcode_at(cantor_snd(payload), depth - 1);
  if (tag == kPEq) return true;
  if (tag == kPEx || tag == kPAll)
    return valid_set_code(cantor_fst(payload)) && decode(cantor_snd(payload)).has_value();
  return false;
}

}  // namespace

Nat pcode_bot() { return cantor_pair(kPBot, 0); }
Nat pcode_top() { return cantor_pair(kPTop, 0); }
Nat pcode_conj(const Nat& p, const Nat& q) { return cantor_pair(kPConj, cantor_pair(p, q)); }
Nat pcode_disj(const Nat& p, const Nat& q) { return cantor_pair(kPDisj, cantor_pair(p, q)); }
Nat pcode_imp(const Nat& p, const Nat& q) { return cantor_pair(kPImp, cantor_pair(p, q)); }
Nat pcode_eqnat(const Nat& m, const Nat& n) { return cantor_pair(kPEq, cantor_pair(m, n)); }
Nat pcode_ex(const Nat& set_code, const PcaCode& fam) {
  return cantor_pair(kPEx, cantor_pair(set_code, fam));
}
Nat pcode_all(const Nat& set_code, const PcaCode& fam) {
  return cantor_pair(kPAll, cantor_pair(set_code, fam));
}

bool valid_pcode(const Nat& c) { return valid_pcode_at(c, kPcodeDepth); }

Nat pcode_proof_set(const Nat& c, Fuel fuel) {
  {
    std::lock_guard<std::mutex> lock(pcode_mutex);
    auto it = proof_set_cache().find({c, fuel});
    if (it != proof_set_cache().end()) return it->second;
  }
  auto [tag, payload] = cantor_unpair(c);
  Nat out;
  if (tag == kPBot) out = empty_code();
  else if (tag == kPTop) out = unit_code();
  else if (tag == kPConj)
    out = sigma_code(pcode_proof_set(cantor_fst(payload), fuel),
                     code_const(pcode_proof_set(cantor_snd(payload), fuel)));
  else if (tag == kPDisj)
    out = sum_code(pcode_proof_set(cantor_fst(payload), fuel),
                   pcode_proof_set(cantor_snd(payload), fuel));
  else if (tag == kPImp)
    out = pi_code(pcode_proof_set(cantor_fst(payload), fuel),
                  code_const(pcode_proof_set(cantor_snd(payload), fuel)));
  else if (tag == kPEq)
    out = cantor_fst(payload) == cantor_snd(payload) ? unit_code() : empty_code();
  else if (tag == kPEx || tag == kPAll) {
    Nat set = cantor_fst(payload);
    PcaCode fam = cantor_snd(payload);
    // Pointwise translation of the family over the sampled base.
    std::vector<std::pair<Nat, Nat>> entries;
    for (const auto& s : decode_set(set, fuel).sample) {
      EvalOutcome ps = apply(fam, s, fuel);
      if (!ps.is_value())
        throw Error("invalid-pcode", "quantifier family diverges at " + nat_str(s));
      entries.emplace_back(s, pcode_proof_set(ps.value, fuel));
    }
    Nat famcode = code_table(entries, empty_code());
    out = tag == kPEx ? sigma_code(set, famcode) : pi_code(set, famcode);
  } else {
    throw Error("invalid-pcode", nat_str(c) + " is not a proposition code");
  }
  std::lock_guard<std::mutex> lock(pcode_mutex);
  proof_set_cache().emplace(std::make_pair(c, fuel), out);
  return out;
}

Collection pcode_proofs(const Nat& c, Fuel fuel) {
  return decode_set(pcode_proof_set(c, fuel), fuel);
}

bool pcode_inhabited(const Nat& c, Fuel fuel) {
  auto [tag, payload] = cantor_unpair(c);
  if (tag == kPBot) return false;
  if (tag == kPTop) return true;
  if (tag == kPConj)
    return pcode_inhabited(cantor_fst(payload), fuel) &&
           pcode_inhabited(cantor_snd(payload), fuel);
  if (tag == kPDisj)
    return pcode_inhabited(cantor_fst(payload), fuel) ||
           pcode_inhabited(cantor_snd(payload), fuel);
  if (tag == kPImp)
    return !pcode_inhabited(cantor_fst(payload), fuel) ||
           pcode_inhabited(cantor_snd(payload), fuel);
  if (tag == kPEq) return cantor_fst(payload) == cantor_snd(payload);
  if (tag == kPEx || tag == kPAll) {
    Nat set = cantor_fst(payload);
    PcaCode fam = cantor_snd(payload);
    for (const auto& s : decode_set(set, fuel).sample) {
      EvalOutcome ps = apply(fam, s, fuel);
      if (!ps.is_value()) return false;
      bool inner = pcode_inhabited(ps.value, fuel);
      if (tag == kPEx && inner) return true;
      if (tag == kPAll && !inner) return false;
    }
    return tag == kPAll;
  }
  return false;
}

std::optional<Nat> pcode_proof(const Nat& c, Fuel fuel) {
  if (!pcode_inhabited(c, fuel)) return std::nullopt;
  auto sample = pcode_proofs(c, fuel).sample;
  if (!sample.empty()) return sample.front();
  // Implication fibers may sample empty while a vacuous code still lands.
  auto [tag, payload] = cantor_unpair(c);
  if (tag == kPImp) {
    auto q = pcode_proof(cantor_snd(payload), fuel);
    return code_const(q ? *q : Nat(0));
  }
  return std::nullopt;
}

namespace {

std::vector<Nat> omega_catalog() {
  PcaCode to_eq1 = 0;
  std::vector<std::pair<Nat, Nat>> entries;
  for (Nat s = 0; s < 2; ++s) entries.emplace_back(s, pcode_eqnat(s, 1));
  to_eq1 = code_table(entries, pcode_bot());
  return {pcode_bot(),
          pcode_top(),
          pcode_eqnat(0, 0),
          pcode_eqnat(0, 1),
          pcode_conj(pcode_top(), pcode_bot()),
          pcode_disj(pcode_bot(), pcode_top()),
          pcode_ex(nat_code(2), to_eq1),
          pcode_all(nat_code(2), code_const(pcode_top()))};
}

Nat canonical_biimpl(const Nat& p, const Nat& q, Fuel fuel) {
  // The canonical proof of p <-> q at desk scale, when inhabitation agrees.
  auto mk_dir = [fuel](const Nat& from, const Nat& to) -> std::optional<Nat> {
    if (!pcode_inhabited(from, fuel)) return code_const(0);
    auto pr = pcode_proof(to, fuel);
    if (!pr) return std::nullopt;
    return code_const(*pr);
  };
  auto w1 = mk_dir(p, q);
  auto w2 = mk_dir(q, p);
  if (!w1 || !w2) throw Error("not-equivalent", "no bi-implication witness");
  return cantor_pair(*w1, *w2);
}

}  // namespace

QObject omega() {
  auto catalog = omega_catalog();
  Collection base = mk_collection(
      "Omega", [](const Nat& c) { return valid_pcode(c); }, catalog);
  Fuel fuel = 4 * kDefaultFuel;
  Family fam = mk_family(
      "rel(Omega)", product(base, base),
      [fuel](const Nat& pt, const Nat& w) {
        Nat p = cantor_fst(pt), q = cantor_snd(pt);
        Collection pp = pcode_proofs(p, fuel);
        Collection qp = pcode_proofs(q, fuel);
        for (const auto& u : pp.sample) {
          EvalOutcome out = apply(cantor_fst(w), u, fuel);
          if (!out.is_value() || !qp.member(out.value)) return false;
        }
        for (const auto& v : qp.sample) {
          EvalOutcome out = apply(cantor_snd(w), v, fuel);
          if (!out.is_value() || !pp.member(out.value)) return false;
        }
        return true;
      },
      [fuel](const Nat& pt) -> std::vector<Nat> {
        Nat p = cantor_fst(pt), q = cantor_snd(pt);
        if (pcode_inhabited(p, fuel) != pcode_inhabited(q, fuel)) return {};
        try {
          return {canonical_biimpl(p, q, fuel)};
        } catch (const Error&) {
          return {};
        }
      });
  RProp rel = mk_prop("rel(Omega)", std::move(fam));
  // The witnesses are uniform: identity codes realize reflexivity, swapping
  // realizes symmetry, and composing the transformer values (a partial
  // application of the composition combinator) realizes transitivity.
  PcaCode refl = encode(lam_(lam_(
      pair_(lit_(code_identity()), lit_(code_identity())))));
  PcaCode sym = encode(lam_(lam_(pair_(snd_(var_(0)), fst_(var_(0))))));
  PcaCode cp = code_compose_values();
  TermPtr w1 = fst_(fst_(var_(0))), w2 = snd_(fst_(var_(0)));
  TermPtr u1 = fst_(snd_(var_(0))), u2 = snd_(snd_(var_(0)));
  PcaCode trans = encode(lam_(lam_(pair_(capp(cp, pair_(u1, w1)),
                                         capp(cp, pair_(w2, u2))))));
  return mk_qobject("Omega", base, rel, refl, sym, trans, 16 * kDefaultFuel);
}

QArrow classify(const QObject& x, const DescentProp& p) {
  if (!p.prop.small)
    throw Error("not-small", "classify requires a small descent proposition");
  Fuel fuel = 8 * kDefaultFuel;
  const TrackedArrow& cls = p.prop.small_witness->classifier;
  auto chi_at = [&](const Nat& a) {
    return pcode_ex(arrow_apply(cls, a), code_const(pcode_top()));
  };
  std::vector<std::pair<Nat, Nat>> chi_entries;
  for (const auto& a : x.base.sample) chi_entries.emplace_back(a, chi_at(a));
  QObject om = omega();
  TrackedArrow chi = mk_arrow(x.base, om.base, code_table(chi_entries, pcode_bot()),
                              table_fuel(x.base.sample));
  // Respect: transport proofs through the descent realizer both ways.
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> entries;
  for (const auto& a : x.base.sample)
    for (const auto& b : x.base.sample)
      for (const auto& r : capped(rel_proofs(x, a, b))) {
        Nat rsym = must(x.sym, rel_point(a, b), r, x.fuel, "sym");
        auto dir = [&](const Nat& from, const Nat& to, const Nat& rr) {
          std::vector<std::pair<Nat, Nat>> section;
          for (const auto& u : pcode_proofs(chi_at(from), fuel).sample) {
            Nat carrier = must(p.prop.from_small, from, cantor_fst(u), fuel,
                               "from_small");
            Nat moved = must(p.descent, rel_point(from, to),
                             cantor_pair(carrier, rr), x.fuel + fuel, "descent");
            Nat back = must(p.prop.to_small, to, moved, fuel, "to_small");
            section.emplace_back(u, cantor_pair(back, Nat(0)));
          }
          return code_table(section, 0);
        };
        Nat value = cantor_pair(dir(a, b, r), dir(b, a, rsym));
        entries.push_back({{rel_point(a, b), r}, value});
      }
  PcaCode respect = code_table2(entries, 0);
  return mk_qarrow(x, om, chi, respect);
}

DescentProp pullback_true(const QArrow& chi) {
  Fuel fuel = 8 * kDefaultFuel;
  const TrackedArrow& map = chi.map;
  auto member = [map, fuel](const Nat& a, const Nat& v) {
    return pcode_proofs(arrow_apply(map, a), fuel).member(v);
  };
  auto sample = [map, fuel](const Nat& a) {
    return pcode_proofs(arrow_apply(map, a), fuel).sample;
  };
  Family fam = mk_family("chi*true", chi.dom.base, member, sample);
  RProp prop;
  prop.name = "chi*true";
  prop.carrier = std::move(fam);
  prop.small = true;
  auto cls = classifier_table(
      chi.dom.base,
      [&](const Nat& a) { return pcode_proof_set(arrow_apply(map, a), fuel); },
      empty_code());
  prop.small_witness = std::make_shared<SetFamily>(tau(chi.dom.base, cls));
  prop.to_small = code_fam_identity();
  prop.from_small = code_fam_identity();
  // Descent: apply the forward half of the respect witness.
  PcaCode descent = encode(lam_(lam_(app_(
      fst_(capp2(chi.respect, var_(1), snd_(var_(0)))), fst_(var_(0))))));
  return mk_descent_prop(chi.dom, std::move(prop), descent);
}

PcaCode church_thesis_realizer() {
  // {e*}(n) = <n, w> where w realizes the pointwise equalities by the
  // canonical proof 0 at every argument.
  static const PcaCode zero_fn = encode(lam_(lit_(0)));
  return encode(lam_(pair_(var_(0), lit_(zero_fn))));
}

}  // namespace peff

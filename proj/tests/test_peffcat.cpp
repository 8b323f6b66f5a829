#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peff/peffcat.hpp"

using namespace peff;

namespace {

Collection nat10() {
  std::vector<Nat> sample;
  for (unsigned i = 0; i < 10; ++i) sample.push_back(i);
  return mk_collection("nat", [](const Nat&) { return true; }, sample);
}

Collection fin(unsigned n) {
  std::vector<Nat> sample;
  for (unsigned i = 0; i < n; ++i) sample.push_back(i);
  return mk_collection("fin" + std::to_string(n),
                       [n](const Nat& x) { return x < n; }, sample);
}

// Congruence modulo m with two realizers per related pair.
RProp mod_rel(const Collection& base, unsigned m) {
  Family fam = mk_family(
      "mod" + std::to_string(m), product(base, base),
      [m](const Nat& pt, const Nat& w) {
        return cantor_fst(pt) % m == cantor_snd(pt) % m && w < 2;
      },
      [m](const Nat& pt) -> std::vector<Nat> {
        if (cantor_fst(pt) % m != cantor_snd(pt) % m) return {};
        return {Nat(0), Nat(1)};
      });
  return mk_prop("mod" + std::to_string(m), std::move(fam));
}

RProp eq_rel(const Collection& base) {
  Family fam = mk_family(
      "eq", product(base, base),
      [](const Nat& pt, const Nat& w) {
        return cantor_fst(pt) == cantor_snd(pt) && w == 0;
      },
      [](const Nat& pt) -> std::vector<Nat> {
        if (cantor_fst(pt) != cantor_snd(pt)) return {};
        return {Nat(0)};
      });
  return mk_prop("eq", std::move(fam));
}

PcaCode triv() { return encode(lam_(lam_(lit_(0)))); }
PcaCode pass() { return encode(lam_(lam_(var_(0)))); }
PcaCode first() { return encode(lam_(lam_(fst_(var_(0))))); }

QObject nat_eq() {
  auto base = nat10();
  return mk_qobject("(nat,=)", base, eq_rel(base), triv(), pass(), first());
}

QObject nat_mod2() {
  auto base = nat10();
  return mk_qobject("(nat,mod2)", base, mod_rel(base, 2), triv(), pass(), first());
}

RProp parity_prop(const Collection& base, unsigned residue, unsigned mod = 2) {
  auto cls = classifier_table(
      base,
      [residue, mod](const Nat& x) {
        return x % mod == residue ? unit_code() : empty_code();
      },
      empty_code());
  return mk_small_prop("res" + std::to_string(residue), tau(base, cls));
}

EqRelPresentation mod2_presentation(const Collection& base) {
  return EqRelPresentation{mod_rel(base, 2), triv(), pass(), first(), triv()};
}

}  // namespace

TEST_CASE("qobject validation") {
  CHECK_NOTHROW(nat_eq());
  CHECK_NOTHROW(nat_mod2());
  // A bogus refl realizer is rejected.
  auto base = nat10();
  CHECK_THROWS_AS(mk_qobject("bad", base, mod_rel(base, 2),
                             encode(lam_(lam_(lit_(7)))), pass(), first()),
                  Error);
}

TEST_CASE("qarrow equality") {
  auto m2 = nat_mod2();
  auto idq = q_identity(m2);
  // x + 2 respects mod-2 and is ~ the identity.
  TermPtr plus2 = succ_(succ_(var_(0)));
  auto shift = mk_qarrow(m2, m2, mk_arrow(m2.base, m2.base, abstract(plus2)),
                         pass());
  CHECK(qarrow_eq(idq, shift));
  CHECK(qarrow_eq_with(idq, shift, triv()));

  // succ flips parity: not ~ the identity (fails at 0).
  auto succq = mk_qarrow(m2, m2, mk_arrow(m2.base, m2.base, abstract(succ_(var_(0)))),
                         pass());
  CHECK(!qarrow_eq(succq, idq));

  // Composition respects the relation.
  CHECK(qarrow_eq(q_compose(idq, shift), shift));
}

TEST_CASE("products and coproducts of quotients") {
  auto m2 = nat_mod2();
  auto ne = nat_eq();
  auto prod = q_product(m2, ne);
  auto p1 = q_proj1(m2, ne);
  auto p2 = q_proj2(m2, ne);
  CHECK(carrier_agrees(prod.base, product(m2.base, ne.base)));
  auto paired = q_pair(p1, p2);
  CHECK(qarrow_eq(paired, q_identity(prod)));

  auto cp = q_coproduct(m2, ne);
  auto i1 = q_inj1(m2, ne);
  auto i2 = q_inj2(m2, ne);
  auto back = q_copair(i1, i2);
  CHECK(qarrow_eq(back, q_identity(cp)));
  // Injections keep distinct tags apart.
  CHECK(!rel_holds(cp, cantor_pair(0, 0), cantor_pair(1, 0)));
}

TEST_CASE("equalizer of quotient arrows") {
  auto m2 = nat_mod2();
  auto idq = q_identity(m2);
  auto succq = mk_qarrow(m2, m2,
                         mk_arrow(m2.base, m2.base, abstract(succ_(var_(0)))),
                         pass());
  auto e = q_equalizer(idq, succq);
  CHECK(e.base.sample.empty());
  auto e2 = q_equalizer(idq, idq);
  CHECK(e2.base.sample.size() == m2.base.sample.size());
  CHECK_NOTHROW(q_equalizer_incl(idq, idq));
}

TEST_CASE("quotient coequalizes its kernel pair") {
  auto ne = nat_eq();
  auto pres = mod2_presentation(ne.base);
  auto quotient = q_coequalize_eqrel(ne, pres);
  auto proj = q_quotient_proj(ne, pres);

  // Regular epi at desk scale: every class in the codomain is hit.
  for (const auto& b : quotient.base.sample) {
    bool hit = false;
    for (const auto& a : ne.base.sample)
      hit = hit || rel_holds(quotient, arrow_apply(proj.map, a), b);
    CHECK(hit);
  }

  auto kp = q_kernel_pair(proj);
  CHECK(qarrow_eq(q_compose(proj, kp.k1), q_compose(proj, kp.k2)));

  // Effectiveness: the kernel-pair relation of the projection is
  // order-isomorphic to the quotient relation.
  auto kernel_fam = mk_family(
      "ker-rel", product(ne.base, ne.base),
      [quotient, proj](const Nat& pt, const Nat& w) {
        return quotient.rel.carrier.fiber_member(
            rel_point(arrow_apply(proj.map, cantor_fst(pt)),
                      arrow_apply(proj.map, cantor_snd(pt))),
            w);
      },
      [quotient, proj](const Nat& pt) {
        return quotient.rel.carrier.fiber_sample(
            rel_point(arrow_apply(proj.map, cantor_fst(pt)),
                      arrow_apply(proj.map, cantor_snd(pt))));
      });
  RProp kernel_prop = mk_prop("ker-rel", std::move(kernel_fam));
  OrderWitness fwd{kernel_prop, pres.rel, code_fam_identity(), kDefaultFuel};
  OrderWitness bwd{pres.rel, kernel_prop, code_fam_identity(), kDefaultFuel};
  CHECK(check_leq(fwd));
  CHECK(check_leq(bwd));

  // Coequalizer universal property: a cone through the kernel pair factors
  // uniquely (on samples) through the projection.
  auto m2 = nat_mod2();
  auto h = mk_qarrow(ne, m2, identity(ne.base), pres.contains);
  CHECK(qarrow_eq(q_compose(h, kp.k1), q_compose(h, kp.k2)));
  // The mediator reuses h's map; its respect witness transports kernel
  // proofs through h's coequalizing witness.
  auto mediator = mk_qarrow(quotient, m2, h.map, pass());
  CHECK(qarrow_eq(q_compose(mediator, proj), h));
  // Uniqueness on samples: any other mediator agrees.
  auto mediator2 = mk_qarrow(quotient, m2,
                             mk_arrow(ne.base, ne.base, abstract(fst_(pair_(var_(0), var_(0))))),
                             pass());
  CHECK(qarrow_eq(q_compose(mediator2, proj), h));
  CHECK(qarrow_eq(mediator2, mediator));
}

TEST_CASE("lists of quotients") {
  auto m2 = nat_mod2();
  auto lm2 = q_list(m2);
  // Same parity componentwise: [0,1] ~ [2,3].
  Nat l1 = list_encode({Nat(0), Nat(1)});
  Nat l2 = list_encode({Nat(2), Nat(3)});
  CHECK(rel_holds(lm2, l1, l2));
  CHECK(!rel_holds(lm2, l1, list_encode({Nat(1), Nat(0)})));
  CHECK(!rel_holds(lm2, l1, list_encode({Nat(0)})));

  // Under a discrete relation only equal lists are related.
  auto ne = nat_eq();
  auto lne = q_list(ne);
  CHECK(rel_holds(lne, l1, l1));
  CHECK(!rel_holds(lne, l1, list_encode({Nat(1), Nat(0)})));

  CHECK_NOTHROW(q_nil(m2));
  CHECK_NOTHROW(q_cons(m2));
  // cons maps a product proof to a list proof.
  auto cons = q_cons(m2);
  Nat pt = rel_point(cantor_pair(0, list_encode({Nat(1)})),
                     cantor_pair(2, list_encode({Nat(3)})));
  Nat prod_proof = cantor_pair(0, list_encode({Nat(0)}));
  EvalOutcome moved = apply2(cons.respect, pt, prod_proof, 4 * kDefaultFuel);
  REQUIRE(moved.is_value());
  CHECK(lm2.rel.carrier.fiber_member(
      rel_point(list_encode({Nat(0), Nat(1)}), list_encode({Nat(2), Nat(3)})),
      moved.value));
}

TEST_CASE("exponentials of quotients") {
  std::vector<Nat> s2{0, 1};
  auto f2 = mk_collection("fin2", [](const Nat& x) { return x < 2; }, s2);
  auto x = mk_qobject("(fin2,=)", f2, eq_rel(f2), triv(), pass(), first());
  auto ex = q_exponential(x, x);
  CHECK(!ex.base.sample.empty());
  auto ev = q_eval(x, x);
  // Evaluation respects the relation on the sampled carrier.
  for (const auto& n : ex.base.sample)
    for (const auto& a : f2.sample) {
      Nat w = cantor_pair(n, a);
      CHECK(ev.map.cod.member(arrow_apply(ev.map, w)));
    }
  // Congruence: related pairs evaluate to related results.
  for (const auto& n : ex.base.sample)
    for (const auto& m : ex.base.sample) {
      auto ws = ex.rel.carrier.fiber_sample(rel_point(n, m));
      if (ws.empty()) continue;
      for (const auto& a : f2.sample) {
        Nat na = apply(n, a, kDefaultFuel).value;
        Nat ma = apply(m, a, kDefaultFuel).value;
        CHECK(rel_holds(x, na, ma));
      }
    }
}

TEST_CASE("descent propositions") {
  auto m2 = nat_mod2();
  auto even = parity_prop(m2.base, 0);

  // Parity transports along mod-2.
  auto d = mk_descent_prop(m2, even, triv());
  CHECK(d.prop.small);

  // Top always descends; bottom descends vacuously.
  CHECK_NOTHROW(descent_top(m2));
  CHECK_NOTHROW(descent_bottom(m2));

  // Even does not descend along mod-3: refuted at the sample bound.
  auto base = nat10();
  auto m3 = mk_qobject("(nat,mod3)", base, mod_rel(base, 3), triv(), pass(), first());
  CHECK(!search_descent(m3, even, 3).has_value());
  CHECK_THROWS_AS(mk_descent_prop(m3, even, triv()), Error);

  // Connectives assemble descent witnesses.
  auto odd = parity_prop(m2.base, 1);
  auto dodd = mk_descent_prop(m2, odd, triv());
  CHECK_NOTHROW(descent_and(m2, d, dodd));
  CHECK_NOTHROW(descent_or(m2, d, dodd));
  CHECK_NOTHROW(descent_implies(m2, d, dodd));
}

TEST_CASE("proposition codes") {
  CHECK(pcode_inhabited(pcode_top()));
  CHECK(!pcode_inhabited(pcode_bot()));
  CHECK(pcode_inhabited(pcode_eqnat(3, 3)));
  CHECK(!pcode_inhabited(pcode_eqnat(3, 4)));
  CHECK(pcode_inhabited(pcode_imp(pcode_bot(), pcode_bot())));
  CHECK(!pcode_inhabited(pcode_conj(pcode_top(), pcode_bot())));
  CHECK(pcode_inhabited(pcode_disj(pcode_bot(), pcode_top())));
  // Quantifiers over a set code.
  CHECK(pcode_inhabited(pcode_all(nat_code(2), code_const(pcode_top()))));
  CHECK(!pcode_inhabited(pcode_ex(nat_code(2), code_const(pcode_bot()))));
  // Proofs decode through the set universe.
  auto proofs = pcode_proofs(pcode_conj(pcode_top(), pcode_top()));
  CHECK(proofs.sample.size() == 1);
  CHECK(proofs.member(cantor_pair(0, 0)));
  auto pr = pcode_proof(pcode_disj(pcode_bot(), pcode_top()));
  REQUIRE(pr.has_value());
  CHECK(proofs.member(cantor_pair(0, 0)));
}

TEST_CASE("omega classifies small subobjects") {
  auto om = omega();
  CHECK(om.base.sample.size() >= 6);

  auto ne = nat_eq();
  auto even = parity_prop(ne.base, 0);
  auto even_sub = mk_descent_prop(ne, even, first());
  auto chi = classify(ne, even_sub);

  // Pulling back true recovers a subobject isomorphic to even.
  auto back = pullback_true(chi);
  for (const auto& a : ne.base.sample) {
    bool was = !even.carrier.fiber_sample(a).empty();
    bool now = !back.prop.carrier.fiber_sample(a).empty();
    CHECK(was == now);
  }
  CHECK(back.prop.small);
  CHECK(check_small(back.prop));

  // Classifying the pullback lands in the same ~ class.
  auto chi2 = classify(ne, back);
  CHECK(qarrow_eq(chi, chi2));

  // The top subobject classifies to the true point.
  auto top_sub = descent_top(ne);
  auto chi_top = classify(ne, top_sub);
  auto true_point = mk_qarrow(
      ne, om, mk_arrow(ne.base, om.base, code_const(pcode_top())),
      [&] {
        // Constant arrows respect any relation via omega's refl at top.
        std::vector<std::pair<Nat, Nat>> entries;
        Nat biimpl = cantor_pair(code_const(0), code_const(0));
        (void)biimpl;
        return encode(lam_(lam_(capp2(om.refl, lit_(pcode_top()), lit_(0)))));
      }());
  CHECK(qarrow_eq(chi_top, true_point));

  // Distinct subobjects yield non-equivalent characteristic arrows.
  auto mult4 = parity_prop(ne.base, 0, 4);
  auto mult4_sub = mk_descent_prop(ne, mult4, first());
  auto chi4 = classify(ne, mult4_sub);
  CHECK(!qarrow_eq(chi, chi4));
}

TEST_CASE("church thesis realizer") {
  PcaCode ct = church_thesis_realizer();
  auto check_arrow = [&](const PcaCode& n, auto reference) {
    EvalOutcome out = apply(ct, n, 4 * kDefaultFuel);
    REQUIRE(out.is_value());
    Nat extracted = cantor_fst(out.value);
    Nat witness = cantor_snd(out.value);
    CHECK(extracted == n);
    for (unsigned i = 0; i < 10; ++i) {
      CHECK(apply(extracted, i, kDefaultFuel).value == reference(i));
      // The witness realizes each pointwise equality by 0.
      CHECK(apply(witness, i, kDefaultFuel).value == 0);
    }
  };
  check_arrow(abstract(succ_(var_(0))), [](unsigned i) { return Nat(i + 1); });
  check_arrow(code_identity(), [](unsigned i) { return Nat(i); });
  check_arrow(abstract(succ_(succ_(var_(0)))), [](unsigned i) { return Nat(i + 2); });
}

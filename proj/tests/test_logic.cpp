#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peff/logic.hpp"

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

RProp parity_prop(const Collection& base, unsigned residue) {
  auto cls = classifier_table(
      base,
      [residue](const Nat& x) { return x % 2 == residue ? unit_code() : empty_code(); },
      empty_code());
  return mk_small_prop(residue == 0 ? "even" : "odd", tau(base, cls));
}

}  // namespace

TEST_CASE("order witnesses") {
  auto nat = nat10();
  auto even = parity_prop(nat, 0);
  CHECK(check_leq(leq_refl(even)));
  CHECK(check_leq(leq_bottom(even)));
  CHECK(check_leq(leq_top(even)));

  // Bounded search finds the constant witness for even <= top.
  auto found = search_leq(even, top_prop(nat), 3);
  REQUIRE(found.has_value());
  CHECK(check_leq(*found));

  // No witness exists for top <= bottom; search comes back empty.
  CHECK(!search_leq(top_prop(nat), bottom_prop(nat), 3).has_value());
}

TEST_CASE("lattice laws up to order isomorphism") {
  auto nat = nat10();
  auto even = parity_prop(nat, 0);
  auto top = top_prop(nat);
  auto bot = bottom_prop(nat);

  // and(P, top) ~ P.
  auto pt = and_prop(even, top);
  OrderIso i1{and_proj1(even, top),
              and_intro(leq_refl(even), leq_top(even))};
  CHECK(check_leq(i1.fwd));
  CHECK(check_leq(i1.bwd));

  // or(bot, P) ~ P.
  OrderIso i2{or_elim(leq_bottom(even), leq_refl(even)), or_inj2(bot, even)};
  CHECK(check_leq(i2.fwd));
  CHECK(check_leq(i2.bwd));

  // Commutativity of and via intro/proj.
  auto pq = and_prop(even, parity_prop(nat, 1));
  auto qp = and_prop(parity_prop(nat, 1), even);
  auto swap = and_intro(and_proj2(even, parity_prop(nat, 1)),
                        and_proj1(even, parity_prop(nat, 1)));
  CHECK(check_leq(swap));
  CHECK(carrier_agrees(swap.to.base(), qp.base()));
}

TEST_CASE("modus ponens and residuation") {
  auto nat = nat10();
  auto even = parity_prop(nat, 0);
  auto odd = parity_prop(nat, 1);

  CHECK(check_leq(modus_ponens(even, odd)));
  CHECK(check_leq(modus_ponens(even, even)));

  // curry: from and(P,R) <= Q derive R <= (P -> Q) and back.
  auto r = top_prop(nat);
  // and(even, top) <= even by the first projection.
  auto w = and_proj1(even, r);
  auto curried = curry_mate(even, r, even, w);
  CHECK(check_leq(curried));
  auto uncurried = uncurry_mate(even, r, even, curried);
  CHECK(check_leq(uncurried));
}

TEST_CASE("substitution") {
  auto nat = nat10();
  auto even = parity_prop(nat, 0);
  auto idn = identity(nat);
  CHECK(family_agrees(subst_prop(idn, even).carrier, even.carrier));

  // Substitution along succ swaps parity.
  auto s = mk_arrow(nat, nat, abstract(succ_(var_(0))));
  auto shifted = subst_prop(s, even);
  auto odd = parity_prop(nat, 1);
  // Samples of nat reach only up to 9, so compare fibers on [0..8].
  for (unsigned i = 0; i < 9; ++i) {
    CHECK(shifted.carrier.fiber_member(i, 0) == odd.carrier.fiber_member(i, 0));
  }

  // Substitution preserves witnesses.
  auto w = leq_top(even);
  CHECK(check_leq(subst_leq(s, w)));

  // Small flags survive substitution with a valid presentation.
  CHECK(shifted.small);
  CHECK(check_small(shifted));
}

TEST_CASE("small flags propagate soundly") {
  auto nat = nat10();
  auto even = parity_prop(nat, 0);
  auto odd = parity_prop(nat, 1);
  CHECK(check_small(even));
  CHECK(check_small(top_prop(nat)));
  CHECK(check_small(bottom_prop(nat)));
  CHECK(check_small(and_prop(even, odd)));
  CHECK(check_small(or_prop(even, odd)));
  auto imp = implies_prop(even, odd);
  CHECK(imp.small);
  CHECK(check_small(imp));
}

TEST_CASE("exists adjunction") {
  auto f3 = fin(3);
  auto nat = nat10();
  auto incl = mk_arrow(f3, nat, code_identity());
  auto p = mk_small_prop("triv", set_terminal_family(f3));
  auto q = parity_prop(nat, 0);

  // E_f(P) <= Q fails pointwise here, so use Q = top for the adjunct pair.
  auto top = top_prop(nat);
  auto up = exists_mate_fwd(incl, p, top, leq_top(subst_prop(incl, top)));
  CHECK(check_leq(up));

  // From P <= subst(f, Q) and back, landing where we started.
  auto w0 = OrderWitness{p, subst_prop(incl, top), encode(lam_(lam_(lit_(0)))),
                         kDefaultFuel};
  CHECK(check_leq(w0));
  auto down = exists_mate_fwd(incl, p, top, w0);
  CHECK(check_leq(down));
  auto back = exists_mate_bwd(incl, p, top, down);
  CHECK(check_leq(back));

  // exists along identity is order-isomorphic to P.
  auto idn = identity(f3);
  auto ex_id = exists_along(idn, p);
  OrderWitness fwd{ex_id, p, encode(lam_(lam_(snd_(var_(0))))), kDefaultFuel};
  OrderWitness bwd{p, ex_id, encode(lam_(lam_(pair_(var_(1), var_(0))))), kDefaultFuel};
  CHECK(check_leq(fwd));
  CHECK(check_leq(bwd));
}

TEST_CASE("forall mates along a set-fibred arrow") {
  auto f2 = fin(2);
  auto two = set_constant(f2, nat_code(2));
  auto proj = set_I(two);  // Sigma(fin2, two) -> fin2, set-fibred
  auto dom = proj.dom;

  auto p = mk_small_prop("triv", set_terminal_family(dom));
  auto q = top_prop(f2);

  auto w = OrderWitness{subst_prop(proj, q), p, encode(lam_(lam_(lit_(0)))),
                        kDefaultFuel};
  CHECK(check_leq(w));
  auto up = forall_mate_fwd(proj, q, p, w);
  CHECK(check_leq(up));
  auto down = forall_mate_bwd(proj, q, p, up);
  CHECK(check_leq(down));

  // Small quantifiers require the witness and stay small.
  auto ex = exists_along_small(proj, p);
  CHECK(ex.small);
  CHECK(check_small(ex));
  auto all = forall_along_small(proj, p);
  CHECK(all.small);
  CHECK(check_small(all));
  CHECK_THROWS_AS(exists_along_small(identity(f2), q), Error);
}

TEST_CASE("frobenius reciprocity") {
  auto f3 = fin(3);
  auto nat = nat10();
  auto incl = mk_arrow(f3, nat, code_identity());
  auto q = parity_prop(nat, 0);
  auto p = mk_small_prop("triv", set_terminal_family(f3));
  auto iso = frobenius(incl, q, p);
  CHECK(check_iso(iso));
}

TEST_CASE("beck-chevalley on a pullback square") {
  auto f2 = fin(2);
  auto f3 = fin(3);
  auto f = mk_arrow(f2, f3, code_identity());
  auto c = tau(f3, classifier_table(
                       f3, [](const Nat& x) { return nat_code(x + 1); }, nat_code(1)));
  // P over Sigma(f3, c): proofs witness "the fiber component is zero".
  Collection total = sigma_total(c.family);
  auto p = mk_small_prop(
      "snd0", tau(total, classifier_table(
                             total,
                             [](const Nat& w) {
                               return cantor_snd(w) == 0 ? unit_code() : empty_code();
                             },
                             empty_code())));
  auto iso = beck_chevalley(f, c.family, p);
  CHECK(check_iso(iso));
}

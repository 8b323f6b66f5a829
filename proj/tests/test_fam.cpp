#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "peff/fam.hpp"

using namespace peff;

namespace {

Collection fin(unsigned n) {
  std::vector<Nat> sample;
  for (unsigned i = 0; i < n; ++i) sample.push_back(i);
  return mk_collection("fin" + std::to_string(n),
                       [n](const Nat& x) { return x < n; }, sample);
}

Collection nat10() {
  std::vector<Nat> sample;
  for (unsigned i = 0; i < 10; ++i) sample.push_back(i);
  return mk_collection("nat", [](const Nat&) { return true; }, sample);
}

// LT over fin3: fiber at x is {0..x}.
Family lt_family() {
  return mk_family(
      "le", fin(3), [](const Nat& x, const Nat& y) { return x < 3 && y <= x; },
      [](const Nat& x) {
        std::vector<Nat> out;
        for (Nat y = 0; y <= x; ++y) out.push_back(y);
        return out;
      });
}

}  // namespace

TEST_CASE("subst functoriality") {
  auto f3 = fin(3);
  auto lt = lt_family();
  CHECK(family_agrees(subst(identity(f3), lt), lt));

  // Shifted base: fiber of subst(succ, LT-over-nat) at 1 is LT's fiber at 2.
  auto nat = nat10();
  auto ltn = mk_family(
      "le", nat, [](const Nat&, const Nat&) { return true; },
      [](const Nat& x) {
        std::vector<Nat> out;
        for (Nat y = 0; y <= x; ++y) out.push_back(y);
        return out;
      });
  auto s = mk_arrow(nat, nat, abstract(succ_(var_(0))));
  auto shifted = subst(s, ltn);
  CHECK(shifted.fiber_sample(1) == ltn.fiber_sample(2));

  auto ss = compose(s, s);
  CHECK(family_agrees(subst(ss, ltn), subst(s, subst(s, ltn))));
}

TEST_CASE("sigma_along fibers and adjunction triangles") {
  auto f3 = fin(3);
  auto lt = lt_family();

  // Along the identity the fiber at x is {<x, c>}.
  auto sid = sigma_along(identity(f3), lt);
  for (const auto& x : f3.sample) {
    auto fib = sid.fiber_sample(x);
    std::set<Nat> expect;
    for (const auto& c : lt.fiber_sample(x)) expect.insert(cantor_pair(x, c));
    CHECK(std::set<Nat>(fib.begin(), fib.end()) == expect);
  }

  // Collapse to the point: the fiber collects all 6 elements of Sigma(f3,lt).
  auto to_pt = mk_arrow(f3, terminal(), code_const(0));
  auto collapsed = sigma_along(to_pt, lt);
  CHECK(collapsed.fiber_sample(0).size() == 6);

  // Triangle identities for Sigma_f -| subst(f).
  for (const auto& f : {to_pt, identity(f3)}) {
    auto lhs = fam_compose(sigma_counit(f, sigma_along(f, lt)),
                           sigma_along_map(f, sigma_unit(f, lt)));
    CHECK(fam_arrow_eq(lhs, fam_identity(sigma_along(f, lt))));
    auto d = constant_unit_family(f.cod);
    auto rhs = fam_compose(subst_map(f, sigma_counit(f, d)),
                           sigma_unit(f, subst(f, d)));
    CHECK(fam_arrow_eq(rhs, fam_identity(subst(f, d))));
  }
}

TEST_CASE("weak pi") {
  auto f3 = fin(3);
  auto to_pt = mk_arrow(f3, terminal(), code_const(0));

  // Constant unit family: the constant-0 code inhabits the fiber.
  auto unit = constant_unit_family(f3);
  auto piu = weak_pi_along(to_pt, unit);
  CHECK(piu.fiber_member(0, code_const(0)));

  // A choice function for le over fin3 exists in the harvested sample.
  auto lt = lt_family();
  auto pi = weak_pi_along(to_pt, lt);
  bool found = false;
  for (const auto& n : pi.fiber_sample(0)) {
    bool zero_everywhere = true;
    for (const auto& x : f3.sample)
      zero_everywhere = zero_everywhere && apply(n, x, kDefaultFuel).value == 0;
    found = found || zero_everywhere;
  }
  CHECK(found);

  // Transposing and evaluating recovers the original arrow extensionally.
  auto d = constant_unit_family(terminal());
  auto g = mk_family_arrow(subst(to_pt, d), lt,
                           encode(lam_(lam_(lit_(0)))));
  auto t = weak_pi_transpose(to_pt, lt, d, g);
  for (const auto& y : d.base.sample)
    for (const auto& dv : d.fiber_sample(y)) {
      Nat section = family_apply(t, y, dv);
      for (const auto& x : f3.sample)
        CHECK(apply(section, x, kDefaultFuel).value == family_apply(g, x, dv));
    }
}

TEST_CASE("sigma_total sample matches brute force") {
  auto lt = lt_family();
  auto tot = sigma_total(lt);
  std::set<Nat> brute;
  for (Nat a = 0; a < 3; ++a)
    for (Nat b = 0; b <= a; ++b) brute.insert((a + b) * (a + b + 1) / 2 + b);
  CHECK(std::set<Nat>(tot.sample.begin(), tot.sample.end()) == brute);
  CHECK(tot.sample.size() == 6);
  CHECK(brute == std::set<Nat>{Nat(0), Nat(1), Nat(4), Nat(3), Nat(7), Nat(12)});

  // Sigma(A, constant unit) ~ A via the first projection.
  auto f3 = fin(3);
  auto unit_tot = sigma_total(constant_unit_family(f3));
  auto p1 = functor_I_obj(constant_unit_family(f3));
  std::set<Nat> image;
  for (const auto& w : unit_tot.sample) image.insert(arrow_apply(p1, w));
  CHECK(image.size() == unit_tot.sample.size());
  CHECK(image == std::set<Nat>(f3.sample.begin(), f3.sample.end()));

  // Sigma(1, B) ~ fiber of B at 0.
  auto b0 = constant_family(terminal(), fin(2));
  CHECK(sigma_total(b0).sample.size() == 2);
}

TEST_CASE("slice equivalence I and J") {
  auto lt = lt_family();
  auto f3 = fin(3);

  // J(I(lt)) is pointwise isomorphic to lt, witnessed both ways.
  auto jil = functor_J_obj(functor_I_obj(lt));
  auto fwd = mk_family_arrow(lt, jil, encode(lam_(lam_(pair_(var_(1), var_(0))))));
  auto bwd = mk_family_arrow(jil, lt, encode(lam_(lam_(snd_(var_(0))))));
  CHECK(fam_arrow_eq(fam_compose(bwd, fwd), fam_identity(lt)));
  CHECK(fam_arrow_eq(fam_compose(fwd, bwd), fam_identity(jil)));

  // I(constant unit family) is an iso onto the base.
  auto p1 = functor_I_obj(constant_unit_family(f3));
  auto back = mk_arrow(f3, p1.dom, encode(lam_(pair_(var_(0), lit_(0)))));
  CHECK(arrow_eq(compose(p1, back), identity(f3)));
  CHECK(arrow_eq(compose(back, p1), identity(p1.dom)));

  // I(J(b)) ~ b in the slice for a fixture arrow.
  auto b = mk_arrow(f3, f3, code_identity());
  auto jb = functor_J_obj(b);
  auto ijb = functor_I_obj(jb);
  auto to_total = mk_arrow(b.dom, ijb.dom,
                           encode(lam_(pair_(capp(b.code, var_(0)), var_(0)))));
  auto from_total = mk_arrow(ijb.dom, b.dom, encode(lam_(snd_(var_(0)))));
  CHECK(arrow_eq(compose(ijb, to_total), b));
  CHECK(arrow_eq(compose(b, from_total), ijb));
  CHECK(arrow_eq(compose(from_total, to_total), identity(b.dom)));

  // I on arrows follows the displayed realizer shape.
  auto diag = fam_diagonal(lt);
  auto idiag = functor_I_map(diag);
  for (const auto& w : sigma_total(lt).sample) {
    Nat expect = cantor_pair(cantor_fst(w),
                             family_apply(diag, cantor_fst(w), cantor_snd(w)));
    CHECK(arrow_apply(idiag, w) == expect);
  }
}

TEST_CASE("sigma_map pullback square") {
  auto f3 = fin(3);
  auto nat = nat10();
  auto ltn = mk_family(
      "le", nat, [](const Nat&, const Nat& y) { return true; },
      [](const Nat& x) {
        std::vector<Nat> out;
        for (Nat y = 0; y <= x; ++y) out.push_back(y);
        return out;
      });
  auto f = mk_arrow(f3, nat, abstract(succ_(var_(0))));

  // Identity gives the identity extensionally.
  auto idm = sigma_map(identity(nat), ltn);
  CHECK(arrow_eq(idm, identity(sigma_total(ltn))));

  // The square commutes.
  auto top = sigma_map(f, ltn);
  auto left = functor_I_obj(subst(f, ltn));
  auto right = functor_I_obj(ltn);
  CHECK(arrow_eq(compose(right, top), compose(f, left)));

  // The canonical mediator exists, commutes, and is sample-unique.
  auto x = fin(2);
  auto q = mk_arrow(x, f3, code_identity());
  auto r = mk_arrow(x, sigma_total(ltn),
                    encode(lam_(pair_(succ_(var_(0)), lit_(0)))));
  auto med = sigma_map_mediator(f, ltn, q, r);
  CHECK(arrow_eq(compose(left, med), q));
  CHECK(arrow_eq(compose(top, med), r));
  for (const auto& p : x.sample) {
    Nat w = arrow_apply(med, p);
    // Any sampled element satisfying both cone equations coincides with it.
    for (const auto& cand : sigma_total(subst(f, ltn)).sample) {
      if (arrow_apply(left, cand) == arrow_apply(q, p) &&
          arrow_apply(top, cand) == arrow_apply(r, p))
        CHECK(cand == w);
    }
  }
}

TEST_CASE("sigma_over and currying") {
  auto lt = lt_family();
  auto total = sigma_total(lt);
  auto cunit = constant_unit_family(total);

  // With a constant unit second component the fibers mirror B.
  auto so = sigma_over(lt, cunit);
  for (const auto& a : lt.base.sample) {
    auto fib = so.fiber_sample(a);
    CHECK(fib.size() == lt.fiber_sample(a).size());
    for (const auto& w : fib) {
      Nat s = cantor_fst(w);
      CHECK(cantor_fst(s) == a);
      CHECK(lt.fiber_member(a, cantor_snd(s)));
      CHECK(cantor_snd(w) == 0);
    }
  }

  // cur and its inverse compose to identities.
  auto cu = cur_iso(lt, cunit);
  auto ci = cur_inv(lt, cunit);
  CHECK(arrow_eq(compose(ci, cu), identity(sigma_total(cunit))));
  CHECK(arrow_eq(compose(cu, ci), identity(sigma_total(sigma_over(lt, cunit)))));

  // The literal realizer shape: <<a,b>,c> maps to <a, <<a,b>,c>>.
  for (const auto& w : sigma_total(cunit).sample) {
    CHECK(arrow_apply(cu, w) == cantor_pair(cantor_fst(cantor_fst(w)), w));
  }

  // Naturality in B along a fixture arrow.
  auto f3 = fin(3);
  auto unitf = constant_unit_family(f3);
  auto incl = mk_family_arrow(unitf, lt, encode(lam_(lam_(lit_(0)))));
  auto c_over = constant_unit_family(sigma_total(lt));
  auto lhs = compose(functor_I_map(sigma_over_map(incl, c_over)),
                     cur_iso(unitf, subst(functor_I_map(incl), c_over)));
  auto rhs = compose(cur_iso(lt, c_over),
                     sigma_map(functor_I_map(incl), c_over));
  CHECK(arrow_eq(lhs, rhs));

  // The Sigma^A(f, C) square commutes over the base.
  auto sq_top = sigma_over_map(incl, c_over);
  auto sq_left = sigma_over_proj(unitf, subst(functor_I_map(incl), c_over));
  auto sq_right = sigma_over_proj(lt, c_over);
  CHECK(fam_arrow_eq(fam_compose(sq_right, sq_top), fam_compose(incl, sq_left)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "peff/setuniv.hpp"

using namespace peff;

namespace {

Collection fin(unsigned n) {
  std::vector<Nat> sample;
  for (unsigned i = 0; i < n; ++i) sample.push_back(i);
  return mk_collection("fin" + std::to_string(n),
                       [n](const Nat& x) { return x < n; }, sample);
}

std::set<Nat> sample_set(const std::vector<Nat>& xs) {
  return std::set<Nat>(xs.begin(), xs.end());
}

// le(x) as a set code classifier over fin3: x maps to nat(x+1).
TrackedArrow le_classifier() {
  auto f3 = fin(3);
  return classifier_table(
      f3, [](const Nat& x) { return nat_code(x + 1); }, nat_code(1));
}

}  // namespace

TEST_CASE("set code roundtrip and validity") {
  SetCode c = SetCode::sigma(SetCode::nat(3), code_const(nat_code(2)));
  auto back = decode_set_code(encode_set(c));
  REQUIRE(back.has_value());
  CHECK(back->kind == SetCode::Kind::Sigma);
  CHECK(valid_set_code(encode_set(c)));
  CHECK(valid_set_code(unit_code()));
  // An out-of-range tag is rejected.
  CHECK(!valid_set_code(cantor_pair(9, 0)));
}

TEST_CASE("decode_set basics") {
  CHECK(decode_set(unit_code()).sample == std::vector<Nat>{Nat(0)});
  CHECK(decode_set(empty_code()).sample.empty());

  // sum(unit, unit) = {<0,0>, <1,0>} = {0, 1} under the Cantor tagging.
  auto s = decode_set(sum_code(unit_code(), unit_code()));
  CHECK(sample_set(s.sample) == std::set<Nat>{Nat(cantor_pair(0, 0)), Nat(cantor_pair(1, 0))});
  CHECK(sample_set(s.sample) == std::set<Nat>{Nat(0), Nat(1)});

  // Nat codes sample under the bound while the oracle accepts everything.
  auto n3 = decode_set(nat_code(3));
  CHECK(n3.sample.size() == 3);
  CHECK(n3.member(Nat(1000)));

  // sigma(nat 3, x |-> nat(x+1)) matches the 6-element Sigma(fin3, le).
  PcaCode fam = code_table({{Nat(0), nat_code(1)}, {Nat(1), nat_code(2)}, {Nat(2), nat_code(3)}},
                           nat_code(1));
  auto sig = decode_set(sigma_code(nat_code(3), fam), table_fuel({Nat(0), Nat(1), Nat(2)}));
  std::set<Nat> brute;
  for (Nat a = 0; a < 3; ++a)
    for (Nat b = 0; b <= a; ++b) brute.insert(cantor_pair(a, b));
  CHECK(sample_set(sig.sample) == brute);
  CHECK(sig.sample.size() == 6);
}

TEST_CASE("pi fibers hold distinct extensional behaviours") {
  auto p = decode_set(pi_code(nat_code(2), code_const(nat_code(2))));
  std::set<std::pair<Nat, Nat>> behaviours;
  for (const auto& n : p.sample)
    behaviours.insert({apply(n, 0, kDefaultFuel).value, apply(n, 1, kDefaultFuel).value});
  CHECK(behaviours.size() >= 4);
  // Membership is extensional on the base sample.
  CHECK(p.member(code_const(0)));
  CHECK(p.member(code_identity()));
}

TEST_CASE("tau") {
  auto f3 = fin(3);
  auto unit_fam = tau(f3, mk_arrow(f3, universe(), code_const(unit_code())));
  for (const auto& x : f3.sample) {
    CHECK(unit_fam.family.fiber_sample(x) == std::vector<Nat>{Nat(0)});
  }

  // x |-> nat(x+1) over fin3 reproduces the le family.
  auto le = tau(f3, le_classifier());
  for (const auto& x : f3.sample) {
    CHECK(le.family.fiber_sample(x).size() == nat_to_size(x + 1));
    CHECK(le.family.fiber_member(x, x));
    CHECK(le.family.fiber_member(x, 0));
  }

  // A classifier diverging on a sample point is rejected when tracked.
  PcaCode divergent = encode(fix_(lam_(app_(var_(1), var_(0)))));
  CHECK_THROWS_AS(mk_arrow(f3, universe(), divergent), Error);
}

TEST_CASE("set-fibred registry") {
  auto f3 = fin(3);
  auto le = tau(f3, le_classifier());
  auto arrow = set_I(le);
  auto witness = is_set_fibred(arrow);
  REQUIRE(witness.has_value());
  CHECK(family_agrees(witness->family, le.family));

  // A plain user arrow reports unknown.
  CHECK(!is_set_fibred(identity(f3)).has_value());
}

TEST_CASE("I of a set-level arrow is set-fibred via the graph family") {
  auto f3 = fin(3);
  auto le = tau(f3, le_classifier());
  auto two = set_constant(f3, nat_code(2));
  // f(x, y) = min(y, 1), a set-level arrow le -> two.
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> table;
  for (const auto& x : f3.sample)
    for (const auto& y : le.family.fiber_sample(x))
      table.push_back({{x, y}, y > 1 ? Nat(1) : y});
  auto f = mk_family_arrow(le.family, two.family, code_table2(table, Nat(0)),
                           table_fuel({Nat(12)}));
  auto arrow = set_I_map(le, two, f);
  auto witness = is_set_fibred(arrow);
  REQUIRE(witness.has_value());

  // The witness projection is isomorphic to the arrow in the slice: check
  // <a,b> |-> <<a, f(a,b)>, <b,0>> and back commute with the projections.
  auto total_d = sigma_total(witness->family);
  for (const auto& x : f3.sample)
    for (const auto& b : le.family.fiber_sample(x)) {
      Nat image = family_apply(f, x, b);
      Nat up = cantor_pair(cantor_pair(x, image), cantor_pair(b, 0));
      CHECK(total_d.member(up));
      CHECK(arrow_apply(arrow, cantor_pair(x, b)) == cantor_pair(x, image));
    }
  for (const auto& w : total_d.sample) {
    Nat point = cantor_fst(w);
    Nat b = cantor_fst(cantor_snd(w));
    CHECK(family_apply(f, cantor_fst(point), b) == cantor_snd(point));
  }
}

TEST_CASE("sigma combinator lemma on fixtures") {
  auto f3 = fin(3);
  // sigma(unit-code, constant unit family) decodes to one element.
  CHECK(decode_set(sigma_code(unit_code(), code_const(unit_code()))).sample.size() == 1);

  for (const auto& base_cl : {le_classifier(),
                              mk_arrow(f3, universe(), code_const(nat_code(2)))}) {
    auto s = tau(f3, base_cl);
    Collection total = sigma_total(s.family);
    // m classifies fibers over the total space: <x,y> |-> nat(y+1).
    auto m = classifier_table(
        total, [](const Nat& w) { return nat_code(cantor_snd(w) + 1); }, nat_code(1));
    auto inner = tau(total, m);

    // Left side: Sigma along the first projection of the inner tau family.
    Family lhs = sigma_along(functor_I_obj(s.family), inner.family);

    // Right side: the sigma-built classifier x |-> sigma({n}(x), Ly.{m}(<x,y>)).
    auto rhs_cl = classifier_table(
        f3,
        [&](const Nat& x) {
          EvalOutcome nx = apply(base_cl.code, x, base_cl.fuel);
          REQUIRE(nx.is_value());
          std::vector<std::pair<Nat, Nat>> fam_entries;
          for (const auto& y : s.family.fiber_sample(x)) {
            EvalOutcome my = apply(m.code, cantor_pair(x, y), m.fuel);
            REQUIRE(my.is_value());
            fam_entries.emplace_back(y, my.value);
          }
          return sigma_code(nx.value, code_table(fam_entries, empty_code()));
        },
        empty_code());
    Family rhs = tau(f3, rhs_cl).family;

    // Fiberwise isomorphism <s,v> <-> <snd s, v>, brute-forced on samples.
    for (const auto& x : f3.sample) {
      std::set<Nat> left, right;
      for (const auto& w : lhs.fiber_sample(x))
        left.insert(cantor_pair(cantor_snd(cantor_fst(w)), cantor_snd(w)));
      for (const auto& w : rhs.fiber_sample(x)) right.insert(w);
      CHECK(left == right);
      for (const auto& w : lhs.fiber_sample(x)) {
        Nat converted = cantor_pair(cantor_snd(cantor_fst(w)), cantor_snd(w));
        CHECK(rhs.fiber_member(x, converted));
      }
      for (const auto& w : rhs.fiber_sample(x)) {
        Nat back = cantor_pair(cantor_pair(x, cantor_fst(w)), cantor_snd(w));
        CHECK(lhs.fiber_member(x, back));
      }
    }
  }
}

TEST_CASE("pi combinator lemma on a fixture") {
  auto f2 = fin(2);
  auto s = set_constant(f2, nat_code(2));
  Collection total = sigma_total(s.family);
  auto m = classifier_table(
      total, [](const Nat&) { return nat_code(2); }, nat_code(2));
  auto inner = tau(total, m);

  Family lhs = weak_pi_along(functor_I_obj(s.family), inner.family);
  auto rhs_cl = classifier_table(
      f2,
      [&](const Nat& x) {
        std::vector<std::pair<Nat, Nat>> fam_entries;
        for (const auto& y : s.family.fiber_sample(x)) {
          EvalOutcome my = apply(m.code, cantor_pair(x, y), m.fuel);
          fam_entries.emplace_back(y, my.value);
        }
        return pi_code(nat_code(2), code_table(fam_entries, empty_code()));
      },
      empty_code());
  Family rhs = tau(f2, rhs_cl).family;

  for (const auto& x : f2.sample) {
    // Left-side codes convert to right-side codes: k |-> Ly.{k}(<x,y>).
    for (const auto& k : lhs.fiber_sample(x)) {
      PcaCode converted = encode(lam_(capp(k, pair_(lit_(x), var_(0)))));
      CHECK(rhs.fiber_member(x, converted));
    }
    // And conversely: k' |-> Ls.{k'}(snd s).
    for (const auto& k : rhs.fiber_sample(x)) {
      PcaCode converted = encode(lam_(capp(k, snd_(var_(0)))));
      CHECK(lhs.fiber_member(x, converted));
    }
    CHECK(!lhs.fiber_sample(x).empty());
    CHECK(!rhs.fiber_sample(x).empty());
  }
}

TEST_CASE("closure under base constructions") {
  auto f3 = fin(3);
  auto le = tau(f3, le_classifier());
  auto two = set_constant(f3, nat_code(2));

  CHECK(family_agrees(set_product(le, two).family,
                      fam_product(le.family, two.family)));

  // Coproduct fibers match the tagged fiberwise coproduct.
  auto cp = set_coproduct(le, two);
  for (const auto& x : f3.sample) {
    std::set<Nat> got = sample_set(cp.family.fiber_sample(x));
    std::set<Nat> want;
    for (const auto& y : le.family.fiber_sample(x)) want.insert(cantor_pair(0, y));
    for (const auto& y : two.family.fiber_sample(x)) want.insert(cantor_pair(1, y));
    CHECK(got == want);
  }

  // Terminal and initial.
  CHECK(family_agrees(set_terminal_family(f3).family, constant_unit_family(f3)));
  for (const auto& x : f3.sample)
    CHECK(set_initial_family(f3).family.fiber_sample(x).empty());

  // Equalizer of two set-level arrows: fibers biject with the agreement set.
  auto id_arrow = fam_identity(two.family);
  std::vector<std::pair<std::pair<Nat, Nat>, Nat>> swap_table;
  for (const auto& x : f3.sample) {
    swap_table.push_back({{x, Nat(0)}, Nat(1)});
    swap_table.push_back({{x, Nat(1)}, Nat(0)});
  }
  auto swap = mk_family_arrow(two.family, two.family,
                              code_table2(swap_table, Nat(0)), table_fuel({Nat(9)}));
  auto eq = set_equalizer(two, two, id_arrow, swap);
  for (const auto& x : f3.sample) CHECK(eq.family.fiber_sample(x).empty());
  auto eq_id = set_equalizer(two, two, id_arrow, id_arrow);
  for (const auto& x : f3.sample) {
    CHECK(eq_id.family.fiber_sample(x).size() == 2);
    for (const auto& w : eq_id.family.fiber_sample(x))
      CHECK(two.family.fiber_member(x, cantor_fst(w)));
  }

  // Lists and weak exponentials stay set families.
  auto lists = set_list(two, 2);
  for (const auto& x : f3.sample) {
    CHECK(lists.family.fiber_member(x, list_encode({Nat(0), Nat(1)})));
    // A tag outside {nil, cons} is not a list value.
    CHECK(!lists.family.fiber_member(x, cantor_pair(2, 0)));
  }
  // Over a strictly bounded element set, off-carrier entries are rejected.
  auto bits = set_constant(f3, sum_code(unit_code(), unit_code()));
  auto bit_lists = set_list(bits, 2);
  for (const auto& x : f3.sample) {
    CHECK(bit_lists.family.fiber_member(x, list_encode({Nat(0), Nat(1)})));
    CHECK(!bit_lists.family.fiber_member(x, list_encode({Nat(5)})));
  }
  auto exps = set_weak_exponential(two, two);
  for (const auto& x : f3.sample) {
    CHECK(exps.family.fiber_member(x, code_identity()));
    CHECK(!exps.family.fiber_sample(x).empty());
  }
}

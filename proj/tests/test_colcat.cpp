#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "peff/colcat.hpp"

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

PcaCode succ_code() { return abstract(succ_(var_(0))); }

}  // namespace

TEST_CASE("mk_collection") {
  CHECK(fin(3).sample.size() == 3);
  CHECK_THROWS_AS(mk_collection("bad", [](const Nat& x) { return x < 3; },
                                {Nat(0), Nat(5)}),
                  Error);
  CHECK(nat10().sample.size() == 10);
}

TEST_CASE("mk_arrow tracking") {
  auto nat = nat10();
  CHECK_NOTHROW(mk_arrow(nat, nat, succ_code()));
  // succ leaves fin3 at the sample point 2.
  CHECK_THROWS_WITH_AS(mk_arrow(fin(3), fin(3), succ_code()),
                       doctest::Contains("at 2"), Error);
  CHECK_THROWS_AS(mk_arrow(fin(3), fin(3), Nat(0)), Error);
}

TEST_CASE("compose and identity") {
  auto nat = nat10();
  auto s = mk_arrow(nat, nat, succ_code());
  auto ss = compose(s, s);
  CHECK(arrow_apply(ss, 3) == 5);

  auto idn = identity(nat);
  CHECK(arrow_apply(identity(fin(3)), 2) == 2);
  CHECK(identity(nat).code == abstract(var_(0)));
  CHECK(arrow_eq(compose(idn, s), s));
  CHECK(arrow_eq(compose(s, idn), s));

  auto h = mk_arrow(nat, nat, abstract(pair_(var_(0), var_(0))));
  CHECK(arrow_eq(compose(compose(h, s), s), compose(h, compose(s, s))));
}

TEST_CASE("arrow_eq is sample-extensional") {
  auto nat = nat10();
  auto idn = identity(nat);
  auto wrapped = mk_arrow(nat, nat, abstract(fst_(pair_(var_(0), var_(0)))));
  CHECK(arrow_eq(idn, wrapped));
  auto s = mk_arrow(nat, nat, succ_code());
  CHECK(!arrow_eq(s, idn));
  CHECK(arrow_eq(s, s));
  CHECK_THROWS_AS(arrow_eq(s, mk_arrow(fin(3), nat, code_const(0))), Error);
}

TEST_CASE("product with projections") {
  auto f3 = fin(3);
  auto p = product(f3, f3);
  CHECK(p.sample.size() == 9);
  std::set<Nat> seen;
  for (const auto& x : f3.sample)
    for (const auto& y : f3.sample) {
      Nat code = cantor_pair(x, y);
      CHECK(p.member(code));
      seen.insert(code);
    }
  CHECK(seen.size() == 9);
  auto p1 = proj1(f3, f3);
  auto p2 = proj2(f3, f3);
  for (const auto& v : p.sample) {
    CHECK(arrow_apply(p1, v) == cantor_fst(v));
    CHECK(arrow_apply(p2, v) == cantor_snd(v));
  }
  // Universal property on a cone.
  auto f = mk_arrow(f3, f3, code_identity());
  auto g = mk_arrow(f3, f3, code_table({{Nat(0), Nat(2)}, {Nat(1), Nat(1)}, {Nat(2), Nat(0)}}, Nat(0)));
  auto med = pair_arrow(f, g);
  CHECK(arrow_eq(compose(p1, med), f));
  CHECK(arrow_eq(compose(p2, med), g));
}

TEST_CASE("terminal and initial") {
  auto one = terminal();
  CHECK(one.sample.size() == 1);
  auto b = bang(fin(3));
  for (const auto& x : fin(3).sample) CHECK(arrow_apply(b, x) == 0);
  CHECK(initial().sample.empty());
  // The unique arrow out of 0 tracks vacuously.
  CHECK_NOTHROW(mk_arrow(initial(), fin(3), code_identity()));
}

TEST_CASE("coproduct disjoint and jointly surjective on samples") {
  auto f2 = fin(2);
  auto f3 = fin(3);
  auto cp = coproduct(f2, f3);
  auto i1 = inj1(f2, f3);
  auto i2 = inj2(f2, f3);
  std::set<Nat> left, right;
  for (const auto& x : f2.sample) left.insert(arrow_apply(i1, x));
  for (const auto& y : f3.sample) right.insert(arrow_apply(i2, y));
  for (const auto& v : left) CHECK(!right.count(v));
  std::set<Nat> all;
  for (const auto& v : cp.sample) all.insert(v);
  std::set<Nat> both = left;
  both.insert(right.begin(), right.end());
  CHECK(all == both);

  auto f = mk_arrow(f2, f3, code_identity());
  auto g = identity(f3);
  auto m = copair(f, g);
  for (const auto& x : f2.sample)
    CHECK(arrow_apply(m, arrow_apply(i1, x)) == arrow_apply(f, x));
  for (const auto& y : f3.sample)
    CHECK(arrow_apply(m, arrow_apply(i2, y)) == arrow_apply(g, y));
}

TEST_CASE("equalizer") {
  auto f3 = fin(3);
  auto idn = identity(f3);
  auto e = equalizer(idn, idn);
  CHECK(carrier_agrees(e, f3));
  CHECK(e.sample.size() == 3);

  auto swap01 = mk_arrow(f3, f3, code_table({{Nat(0), Nat(1)}, {Nat(1), Nat(0)}}, Nat(2)),
                         table_fuel(f3.sample));
  auto e2 = equalizer(idn, swap01);
  CHECK(e2.sample == std::vector<Nat>{Nat(2)});
  // Mediation: the inclusion of a commuting cone factors.
  auto point = mk_collection("pt", [](const Nat& x) { return x == 2; }, {Nat(2)});
  auto h = mk_arrow(point, f3, code_identity());
  CHECK_NOTHROW(equalizer_mediate(idn, swap01, h));
  auto all = mk_arrow(f3, f3, code_identity());
  CHECK_THROWS_AS(equalizer_mediate(idn, swap01, all), Error);
}

TEST_CASE("list object with fold") {
  auto f3 = fin(3);
  auto lst = list_object(f3);
  // nil plus lists up to length 3 over a 3-point sample.
  CHECK(lst.sample.size() == 1 + 3 + 9 + 27);
  CHECK(lst.member(list_encode({Nat(1), Nat(2)})));
  CHECK(!lst.member(list_encode({Nat(7)})));

  // Unary addition, curried: {add}(a)(b) = a + b.
  TermPtr add_body = natcase_(var_(1), var_(0),
                              succ_(app_(app_(var_(3), var_(0)), var_(1))));
  PcaCode add = encode(fix_(lam_(lam_(add_body))));
  auto nat = nat10();
  auto fold = list_fold(f3, nat, 0, add);
  CHECK(arrow_apply(fold, list_encode({Nat(1), Nat(2)})) == 3);
  CHECK(arrow_apply(fold, list_nil_value()) == 0);
  CHECK(arrow_apply(fold, list_encode({Nat(2), Nat(2), Nat(2)})) == 6);

  // Fold is the mediator: it commutes with nil and cons on samples.
  auto consed = compose(fold, list_cons_arrow(f3));
  for (const auto& h : f3.sample)
    for (const auto& t : {list_nil_value(), list_encode({Nat(1)})}) {
      Nat lhs = arrow_apply(consed, cantor_pair(h, t));
      EvalOutcome rhs = apply2(add, h, arrow_apply(fold, t), kDefaultFuel);
      REQUIRE(rhs.is_value());
      CHECK(lhs == rhs.value);
    }
}

TEST_CASE("weak exponential") {
  auto f2 = fin(2);
  auto exp = weak_exponential(f2, f2);
  CHECK(!exp.sample.empty());
  // Distinct extensional behaviours present in the harvested sample.
  std::set<std::pair<Nat, Nat>> behaviours;
  for (const auto& n : exp.sample) {
    behaviours.insert({apply(n, 0, kDefaultFuel).value, apply(n, 1, kDefaultFuel).value});
  }
  CHECK(behaviours.size() >= 3);

  auto ev = weak_eval(f2, f2);
  for (const auto& n : exp.sample)
    for (const auto& x : f2.sample)
      CHECK(arrow_apply(ev, cantor_pair(n, x)) == apply(n, x, kDefaultFuel).value);

  // Transpose of the swap on fin2 x fin2.
  auto x2 = fin(2);
  auto swap = mk_arrow(product(x2, f2), f2,
                       encode(lam_(fst_(var_(0)))));
  auto t = weak_transpose(x2, f2, f2, swap);
  for (const auto& p : x2.sample)
    for (const auto& a : f2.sample) {
      Nat section = arrow_apply(t, p);
      CHECK(apply(section, a, kDefaultFuel).value == arrow_apply(swap, cantor_pair(p, a)));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "peff/errors.hpp"
#include "peff/generators.hpp"
#include "peff/pca.hpp"
#include "peff/realizers.hpp"

using namespace peff;

namespace {

// Independent restatement of the coding formula: sentinel byte, then the
// serialized term read as a base-256 numeral.
Nat from_bytes(const std::vector<unsigned>& bytes) {
  Nat v = 1;
  for (unsigned b : bytes) v = v * 256 + b;
  return v;
}

// Textbook Cantor formula, kept separate from the library implementation.
Nat cantor_oracle(const Nat& a, const Nat& b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

}  // namespace

TEST_CASE("encode/decode roundtrip on fixed terms") {
  auto id = lam_(var_(0));
  PcaCode k_id = encode(id);
  auto back = decode(k_id);
  REQUIRE(back.has_value());
  CHECK(term_eq(*back, id));

  // (lit 0): tag byte 3 followed by LEB128 payload 0, behind the sentinel.
  CHECK(encode(lit_(0)) == from_bytes({3, 0}));
  CHECK(term_eq(*decode(encode(lit_(0))), lit_(0)));

  CHECK(encode(lit_(0)) != encode(lit_(1)));
  CHECK(encode(id) != encode(lam_(lit_(0))));
}

TEST_CASE("encode rejects open terms, decode rejects junk") {
  CHECK_THROWS_AS(encode(var_(0)), Error);
  CHECK_THROWS_AS(encode(lam_(var_(1))), Error);
  CHECK(!decode(Nat(0)).has_value());
  CHECK(!decode(Nat(5)).has_value());
}

TEST_CASE("roundtrip on generated terms") {
  Rng rng(kDefaultSeed);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    TermPtr t = gen_closed_term(rng);
    PcaCode c = encode(t);
    auto back = decode(c);
    REQUIRE(back.has_value());
    REQUIRE(term_eq(*back, t));
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("eval basics") {
  CHECK(eval(app_(lam_(var_(0)), lit_(7)), 100).value == 7);
  CHECK(eval(pair_(lit_(2), lit_(3)), 100).value == cantor_oracle(2, 3));
  CHECK(eval(pair_(lit_(2), lit_(3)), 100).value == 18);
  CHECK(eval(succ_(succ_(lit_(3))), 100).value == 5);
  CHECK(eval(natcase_(lit_(0), lit_(1), lit_(9)), 100).value == 1);
  CHECK(eval(natcase_(lit_(4), lit_(1), var_(0)), 100).value == 3);
  // fst/snd are total via the bijection.
  CHECK(eval(fst_(lit_(18)), 100).value == 2);
  CHECK(eval(snd_(lit_(18)), 100).value == 3);
}

TEST_CASE("divergent fix exhausts any fuel") {
  auto loop = app_(fix_(lam_(app_(var_(1), var_(0)))), lit_(0));
  for (Fuel f : {Fuel(10), Fuel(100), Fuel(10000)}) {
    CHECK(eval(loop, f).kind == EvalOutcome::Kind::FuelExhausted);
  }
}

TEST_CASE("apply") {
  CHECK(apply(encode(lam_(var_(0))), 7, 100).value == 7);
  CHECK(apply(encode(lam_(succ_(succ_(var_(0))))), 3, 100).value == 5);
  auto bad = apply(Nat(0), 5, 100);
  CHECK(bad.kind == EvalOutcome::Kind::Stuck);
  CHECK(bad.reason == "invalid-code");
  // Applying a value that is not a lambda code gets stuck.
  CHECK(apply(encode(lam_(app_(lit_(3), var_(0)))), 5, 100).kind ==
        EvalOutcome::Kind::Stuck);
}

TEST_CASE("abstract") {
  CHECK(apply(abstract(var_(0)), 9, 100).value == 9);
  CHECK(apply(abstract(pair_(var_(0), var_(0))), 1, 100).value == cantor_oracle(1, 1));
  CHECK(apply(abstract(pair_(var_(0), var_(0))), 1, 100).value == 4);
  CHECK(apply(abstract(natcase_(var_(0), lit_(1), lit_(0))), 0, 100).value == 1);
  CHECK(apply(abstract(natcase_(var_(0), lit_(1), lit_(0))), 3, 100).value == 0);
  CHECK_THROWS_AS(abstract(var_(1)), Error);
}

TEST_CASE("pairing laws") {
  CHECK(pair_num(0, 0) == 0);
  CHECK(pair_num(2, 3) == 18);
  CHECK(fst_num(18) == 2);
  CHECK(snd_num(18) == 3);
  // Bijection on an initial segment.
  for (unsigned c = 0; c < 10000; ++c) {
    Nat a = fst_num(c), b = snd_num(c);
    CHECK(pair_num(a, b) == c);
  }
  Rng rng(kDefaultSeed);
  for (int i = 0; i < 100; ++i) {
    Nat a = gen_small_nat(rng, 100000), b = gen_small_nat(rng, 100000);
    CHECK(fst_num(pair_num(a, b)) == a);
    CHECK(snd_num(pair_num(a, b)) == b);
  }
}

TEST_CASE("beta law and fuel monotonicity on generated bodies") {
  Rng rng(kDefaultSeed + 1);
  for (int i = 0; i < 1000; ++i) {
    TermPtr body = gen_applicable_body(rng);
    Nat v = gen_small_nat(rng);
    PcaCode f = abstract(body);
    EvalOutcome via_apply = apply(f, v, kDefaultFuel);
    EvalOutcome direct = eval(app_(lam_(body), lit_(v)), kDefaultFuel);
    if (via_apply.is_value() && direct.is_value())
      CHECK(via_apply.value == direct.value);
    // Monotonicity: a value stays the same value under more fuel.
    if (direct.is_value()) {
      EvalOutcome more = eval(app_(lam_(body), lit_(v)), 4 * kDefaultFuel);
      REQUIRE(more.is_value());
      CHECK(more.value == direct.value);
    }
  }
}

TEST_CASE("determinism") {
  Rng rng(kDefaultSeed + 2);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = gen_closed_term(rng);
    EvalOutcome a = eval(t, 2000);
    EvalOutcome b = eval(t, 2000);
    CHECK(outcome_eq(a, b));
  }
}

TEST_CASE("equality and table realizers") {
  for (Nat c : {Nat(0), Nat(1), Nat(7), Nat(16), Nat(17), Nat(100), Nat(65341),
                Nat("123456789123456789")}) {
    PcaCode eq = code_eq_const(c);
    CHECK(apply(eq, c, 1 << 20).value == 1);
    CHECK(apply(eq, c + 1, 1 << 20).value == 0);
    if (c > 0) CHECK(apply(eq, c - 1, 1 << 20).value == 0);
  }
  PcaCode table = code_table({{Nat(2), Nat(20)}, {Nat(5), Nat(50)}}, Nat(9));
  Fuel fuel = table_fuel({Nat(2), Nat(5)});
  CHECK(apply(table, 2, fuel).value == 20);
  CHECK(apply(table, 5, fuel).value == 50);
  CHECK(apply(table, 3, fuel).value == 9);

  PcaCode t2 = code_table2({{{Nat(1), Nat(2)}, Nat(12)}, {{Nat(2), Nat(1)}, Nat(21)}}, Nat(0));
  CHECK(apply2(t2, 1, 2, 1 << 20).value == 12);
  CHECK(apply2(t2, 2, 1, 1 << 20).value == 21);
  CHECK(apply2(t2, 3, 3, 1 << 20).value == 0);
}

TEST_CASE("lambda values are codes") {
  // Evaluating a lambda yields its own code, so higher-order results are
  // ordinary naturals that can be applied again.
  auto twice = lam_(lam_(app_(var_(1), app_(var_(1), var_(0)))));
  PcaCode k = encode(twice);
  auto partial = apply(k, encode(lam_(succ_(var_(0)))), kDefaultFuel);
  REQUIRE(partial.is_value());
  CHECK(apply(partial.value, 5, kDefaultFuel).value == 7);
}

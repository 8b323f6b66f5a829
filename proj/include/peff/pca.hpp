#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "peff/nat.hpp"

namespace peff {

// A small term language over N. Every closed term evaluates (under fuel) to a
// natural number; lambda values evaluate to their own Godel code, so
// higher-order data is first-class arithmetic data.
class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
public:
  enum class Tag : std::uint8_t {
    Var,      // de Bruijn index, 0 = nearest binder
    Lam,      // binds one variable
    App,
    Lit,
    Succ,
    NatCase,  // scrutinee, zero branch, successor branch (binds predecessor)
    Pair,     // value-level Cantor pair
    Fst,
    Snd,
    Fix,      // binds the recursive self-reference
  };

  Tag tag;
  std::uint32_t index = 0;  // Var
  Nat lit;                  // Lit
  TermPtr a, b, c;          // children in order

  explicit Term(Tag t) : tag(t) {}
};

TermPtr var_(std::uint32_t index);
TermPtr lam_(TermPtr body);
TermPtr app_(TermPtr fn, TermPtr arg);
TermPtr lit_(Nat n);
TermPtr succ_(TermPtr t);
TermPtr natcase_(TermPtr scrut, TermPtr zero, TermPtr succ_branch);
TermPtr pair_(TermPtr l, TermPtr r);
TermPtr fst_(TermPtr t);
TermPtr snd_(TermPtr t);
TermPtr fix_(TermPtr body);

bool term_eq(const TermPtr& s, const TermPtr& t);
bool term_closed(const TermPtr& t);
std::string term_print(const TermPtr& t);  // s-expression form

// Godel number of a closed term. Coding is a self-delimiting byte
// serialization read as a base-256 numeral behind a sentinel byte; codes grow
// additively under term composition. 0 never decodes.
using PcaCode = Nat;

PcaCode encode(const TermPtr& t);               // throws Error("open-term")
std::optional<TermPtr> decode(const PcaCode&);  // closed term or nullopt

using Fuel = std::uint64_t;
inline constexpr Fuel kDefaultFuel = 100000;

struct EvalOutcome {
  enum class Kind { Value, FuelExhausted, Stuck };
  Kind kind;
  Nat value;           // Kind::Value only
  std::string reason;  // Kind::Stuck only

  static EvalOutcome val(Nat v) { return {Kind::Value, std::move(v), {}}; }
  static EvalOutcome fuel_exhausted() { return {Kind::FuelExhausted, 0, {}}; }
  static EvalOutcome stuck(std::string why) { return {Kind::Stuck, 0, std::move(why)}; }

  bool is_value() const { return kind == Kind::Value; }
  std::string describe() const;
};

bool outcome_eq(const EvalOutcome& x, const EvalOutcome& y);

// Deterministic call-by-value evaluation of a closed term.
EvalOutcome eval(const TermPtr& t, Fuel fuel);

// Kleene application {code}(arg). Curried for higher arities.
EvalOutcome apply(const PcaCode& code, const Nat& arg, Fuel fuel);
EvalOutcome apply2(const PcaCode& code, const Nat& x, const Nat& y, Fuel fuel);

// Meta-level abstraction: body may use exactly the outermost variable.
PcaCode abstract(const TermPtr& body);  // throws Error("open-term")

// The numerals {pair}, {p1}, {p2} as total functions on N.
inline Nat pair_num(const Nat& a, const Nat& b) { return cantor_pair(a, b); }
inline Nat fst_num(const Nat& c) { return cantor_fst(c); }
inline Nat snd_num(const Nat& c) { return cantor_snd(c); }

// Capped substitution-free enumeration of small closed unary lambdas, used to
// harvest sample inhabitants for weak exponentials and Pi-style fibers.
std::vector<PcaCode> enumerate_unary_codes(std::size_t max_body_nodes,
                                           std::size_t cap = 512);

// Shift free variables with index >= cutoff up by one binder.
TermPtr term_lift(const TermPtr& t, std::uint32_t cutoff);

}  // namespace peff

#pragma once

#include <functional>
#include <map>
#include <vector>

#include "peff/errors.hpp"
#include "peff/pca.hpp"

namespace peff {

// Meta-level builders for the realizer terms used throughout the kernel.
// Application of an embedded code n to a term: {n}(t).
inline TermPtr capp(const PcaCode& code, TermPtr t) { return app_(lit_(code), std::move(t)); }
inline TermPtr capp2(const PcaCode& code, TermPtr x, TermPtr y) {
  return app_(app_(lit_(code), std::move(x)), std::move(y));
}

// The identity Lx.x.
PcaCode code_identity();
// Lx.{m}({n}(x)).
PcaCode code_compose(const PcaCode& m, const PcaCode& n);
// Lx.k.
PcaCode code_const(const Nat& k);
// Lx.fst(x) and Lx.snd(x).
PcaCode code_fst();
PcaCode code_snd();
// Lx.Lx'.x' (identity on a family fiber).
PcaCode code_fam_identity();
// Lx.Lx'.{m}(x,{n}(x,x')) (composition of family operations).
PcaCode code_fam_compose(const PcaCode& m, const PcaCode& n);

// Closed term deciding x == c, returning 1/0. The decision walks the Cantor
// pair structure of c, so cost is polylogarithmic in c rather than unary.
PcaCode code_eq_const(const Nat& c);

// Lx.<lookup>: finite dispatch on the argument against `entries` keys, with a
// default value for everything else. Values are embedded as literals.
PcaCode code_table(const std::vector<std::pair<Nat, Nat>>& entries, const Nat& fallback);

// As above but the table entries are arbitrary closed terms.
PcaCode code_table_terms(const std::vector<std::pair<Nat, TermPtr>>& entries,
                         TermPtr fallback);

// Binary curried variant dispatching on the Cantor pair of both arguments.
PcaCode code_table2(const std::vector<std::pair<std::pair<Nat, Nat>, Nat>>& entries,
                    const Nat& fallback);

// Fuel that comfortably runs a table built from the given keys.
Fuel table_fuel(const std::vector<Nat>& keys);

// {code_compose_values}(<f,g>) evaluates to the code of x |-> {f}({g}(x)).
// Partial application of a closed combinator is the kernel's code generator:
// the machine closure-converts the remaining lambda to a fresh code.
PcaCode code_compose_values();

}  // namespace peff

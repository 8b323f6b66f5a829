#pragma once

#include "peff/logic.hpp"

namespace peff {

// An object of the quotient completion: a base collection with a chosen
// representative of its equivalence relation and realizers for the three
// equivalence conditions (curried over point and proof).
struct QObject {
  std::string name;
  Collection base;
  RProp rel;  // over base x base
  PcaCode refl;   // (a, 0) |-> proof of R(a,a)
  PcaCode sym;    // (<a,a'>, p) |-> proof of R(a',a)
  PcaCode trans;  // (<a,<a',a''>>, <p,q>) |-> proof of R(a,a'')
  Fuel fuel = 4 * kDefaultFuel;
};

QObject mk_qobject(std::string name, Collection base, RProp rel, PcaCode refl,
                   PcaCode sym, PcaCode trans, Fuel fuel = 4 * kDefaultFuel);

Nat rel_point(const Nat& a, const Nat& b);
std::vector<Nat> rel_proofs(const QObject& x, const Nat& a, const Nat& b);
bool rel_holds(const QObject& x, const Nat& a, const Nat& b);

struct QArrow {
  QObject dom;
  QObject cod;
  TrackedArrow map;
  PcaCode respect;  // (<a,a'>, p) |-> proof of S(f a, f a')
};

QArrow mk_qarrow(QObject dom, QObject cod, TrackedArrow map, PcaCode respect);
QArrow q_identity(const QObject& x);
QArrow q_compose(const QArrow& g, const QArrow& f);

// f ~ g iff a witness for T <= <f,g>*[S] validates; constructed from
// reflexivity when the maps agree on samples, otherwise searched (bounded).
bool qarrow_eq(const QArrow& f, const QArrow& g);
bool qarrow_eq_with(const QArrow& f, const QArrow& g, const PcaCode& witness);

// Pretopos structure.
QObject q_terminal();
QArrow q_bang(const QObject& x);
QObject q_product(const QObject& x, const QObject& y);
QArrow q_proj1(const QObject& x, const QObject& y);
QArrow q_proj2(const QObject& x, const QObject& y);
QArrow q_pair(const QArrow& f, const QArrow& g);
QObject q_initial();
QObject q_coproduct(const QObject& x, const QObject& y);
QArrow q_inj1(const QObject& x, const QObject& y);
QArrow q_inj2(const QObject& x, const QObject& y);
QArrow q_copair(const QArrow& f, const QArrow& g);
QObject q_equalizer(const QArrow& f, const QArrow& g);
QArrow q_equalizer_incl(const QArrow& f, const QArrow& g);
QObject q_list(const QObject& x);
QArrow q_nil(const QObject& x);
QArrow q_cons(const QObject& x);

// Quotient by an enlarged relation T (with its own equivalence realizers and
// a containment witness R <= T); the projection is the identity map.
struct EqRelPresentation {
  RProp rel;  // over base x base
  PcaCode refl, sym, trans;
  PcaCode contains;  // (<a,a'>, p in R) |-> proof of T(a,a')
};
QObject q_coequalize_eqrel(const QObject& x, const EqRelPresentation& t);
QArrow q_quotient_proj(const QObject& x, const EqRelPresentation& t);

// Kernel-pair data of a quotient arrow: the relation object with its two
// projections into the domain.
struct KernelPair {
  QObject obj;
  QArrow k1, k2;
};
KernelPair q_kernel_pair(const QArrow& q);

// Exponential of quotient objects: carrier restricted to relation-respecting
// codes; the relation is pointwise relatedness.
QObject q_exponential(const QObject& x, const QObject& y,
                      const std::vector<PcaCode>& seeds = {});
QArrow q_eval(const QObject& x, const QObject& y,
              const std::vector<PcaCode>& seeds = {});

// ---------------------------------------------------------------------------
// Descent propositions over a quotient object.

struct DescentProp {
  RProp prop;       // over x.base
  PcaCode descent;  // (<a,a'>, <p, r>) |-> proof at a'
};

DescentProp mk_descent_prop(const QObject& x, RProp prop, PcaCode descent);
std::optional<PcaCode> search_descent(const QObject& x, const RProp& prop,
                                      std::size_t size_bound);
DescentProp descent_top(const QObject& x);
DescentProp descent_bottom(const QObject& x);
DescentProp descent_and(const QObject& x, const DescentProp& p, const DescentProp& q);
DescentProp descent_or(const QObject& x, const DescentProp& p, const DescentProp& q);
DescentProp descent_implies(const QObject& x, const DescentProp& p, const DescentProp& q);

// ---------------------------------------------------------------------------
// The small-subobject classifier. Carrier elements are codes of closed small
// propositions.

Nat pcode_bot();
Nat pcode_top();
Nat pcode_conj(const Nat& p, const Nat& q);
Nat pcode_disj(const Nat& p, const Nat& q);
Nat pcode_imp(const Nat& p, const Nat& q);
Nat pcode_eqnat(const Nat& m, const Nat& n);
Nat pcode_ex(const Nat& set_code, const PcaCode& fam);   // exists over a set
Nat pcode_all(const Nat& set_code, const PcaCode& fam);  // forall over a set

bool valid_pcode(const Nat& c);
// The proof collection of a closed proposition code.
Collection pcode_proofs(const Nat& c, Fuel fuel = 4 * kDefaultFuel);
// Desk-scale decidable inhabitation (quantifiers range over samples).
bool pcode_inhabited(const Nat& c, Fuel fuel = 4 * kDefaultFuel);
std::optional<Nat> pcode_proof(const Nat& c, Fuel fuel = 4 * kDefaultFuel);
// Set code whose decode is the proof collection.
Nat pcode_proof_set(const Nat& c, Fuel fuel = 4 * kDefaultFuel);

QObject omega();

// A small subobject of X presented by a small descent proposition.
QArrow classify(const QObject& x, const DescentProp& p);
DescentProp pullback_true(const QArrow& chi);

// The formal Church's thesis realizer: applied to the tracking code of an
// arrow on (N,=) it returns the code paired with a witness that the code
// computes the arrow.
PcaCode church_thesis_realizer();

}  // namespace peff

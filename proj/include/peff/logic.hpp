#pragma once

#include <optional>

#include "peff/setuniv.hpp"

namespace peff {

// A realized proposition: a chosen representative family of proofs over a
// base. Small propositions carry a set-family presentation together with
// order witnesses into and out of it, since smallness is a property of the
// poset-reflection class rather than of the representative.
struct RProp {
  std::string name;
  Family carrier;
  bool small = false;
  std::shared_ptr<const SetFamily> small_witness;
  PcaCode to_small = 0;    // carrier <= witness family, curried (x, proof)
  PcaCode from_small = 0;  // witness family <= carrier

  const Collection& base() const { return carrier.base; }
};

RProp mk_prop(std::string name, Family carrier);
RProp mk_small_prop(std::string name, const SetFamily& presentation);

// P <= Q witnessed by a code transforming proofs fiberwise.
struct OrderWitness {
  RProp from;
  RProp to;
  PcaCode code;
  Fuel fuel = kDefaultFuel;
};

// Validates the witness on every sampled (point, proof) pair; throws on
// divergence, naming the sample point.
bool check_leq(const OrderWitness& w);
// Bounded witness search (sound, incomplete): curried codes of small size.
std::optional<OrderWitness> search_leq(const RProp& p, const RProp& q,
                                       std::size_t size_bound);

struct OrderIso {
  OrderWitness fwd;
  OrderWitness bwd;
};
bool check_iso(const OrderIso& iso);

// Heyting structure; small flags propagate through every connective.
RProp top_prop(const Collection& a);
RProp bottom_prop(const Collection& a);
RProp and_prop(const RProp& p, const RProp& q);
RProp or_prop(const RProp& p, const RProp& q);
RProp implies_prop(const RProp& p, const RProp& q);

// Canonical witnesses of the lattice/residuation laws.
OrderWitness leq_refl(const RProp& p);
OrderWitness leq_bottom(const RProp& p);             // bottom <= P
OrderWitness leq_top(const RProp& p);                // P <= top
OrderWitness and_proj1(const RProp& p, const RProp& q);
OrderWitness and_proj2(const RProp& p, const RProp& q);
OrderWitness and_intro(const OrderWitness& pw, const OrderWitness& qw);
OrderWitness or_inj1(const RProp& p, const RProp& q);
OrderWitness or_inj2(const RProp& p, const RProp& q);
OrderWitness or_elim(const OrderWitness& pw, const OrderWitness& qw);
OrderWitness modus_ponens(const RProp& p, const RProp& q);
// Residuation mates between and(P,-) and implies(P,-).
OrderWitness curry_mate(const RProp& p, const RProp& r, const RProp& q,
                        const OrderWitness& w);   // from and(P,R) <= Q
OrderWitness uncurry_mate(const RProp& p, const RProp& r, const RProp& q,
                          const OrderWitness& w); // from R <= implies(P,Q)

// Reindexing along a tracked arrow.
RProp subst_prop(const TrackedArrow& f, const RProp& p);
OrderWitness subst_leq(const TrackedArrow& f, const OrderWitness& w);

// Quantifiers along an arrow. The small variants require a set-fibred
// witness on the arrow and produce small propositions.
RProp exists_along(const TrackedArrow& f, const RProp& p);
RProp forall_along(const TrackedArrow& f, const RProp& p);
RProp exists_along_small(const TrackedArrow& f, const RProp& p);
RProp forall_along_small(const TrackedArrow& f, const RProp& p);

// Adjunction mates for exists_along -| subst and subst -| forall_along.
OrderWitness exists_mate_fwd(const TrackedArrow& f, const RProp& p,
                             const RProp& q, const OrderWitness& w);  // from P <= subst(f,Q)
OrderWitness exists_mate_bwd(const TrackedArrow& f, const RProp& p,
                             const RProp& q, const OrderWitness& w);  // from E_f(P) <= Q
OrderWitness forall_mate_fwd(const TrackedArrow& f, const RProp& q,
                             const RProp& p, const OrderWitness& w);  // from subst(f,Q) <= P
OrderWitness forall_mate_bwd(const TrackedArrow& f, const RProp& q,
                             const RProp& p, const OrderWitness& w);  // from Q <= A_f(P)

// Frobenius reciprocity witnesses both ways.
OrderIso frobenius(const TrackedArrow& f, const RProp& q_over_cod,
                   const RProp& p_over_dom);

// Beck-Chevalley on the Sigma(f, C) pullback square for P over Sigma(B,C).
OrderIso beck_chevalley(const TrackedArrow& f, const Family& c, const RProp& p);

// Validates a small presentation: the witness family agrees and both
// conversion witnesses check.
bool check_small(const RProp& p);

}  // namespace peff

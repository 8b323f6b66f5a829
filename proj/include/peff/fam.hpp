#pragma once

#include <functional>
#include <string>
#include <vector>

#include "peff/colcat.hpp"

namespace peff {

inline constexpr std::size_t kFiberCap = 64;
// Fibers whose elements are codes (Pi-style harvests) stay smaller: every
// downstream dispatch on such elements costs interpreter steps per entry.
inline constexpr std::size_t kCodeFiberCap = 16;

// A family of realized collections over a base: a binary membership oracle
// x' in C(x) together with finite fiber samples keyed on base sample points.
struct Family {
  std::string name;
  Collection base;
  std::function<bool(const Nat& x, const Nat& xp)> fiber_member;
  std::function<std::vector<Nat>(const Nat& x)> fiber_sample;
};

// Validates fiber samples against the oracle on every base sample point.
Family mk_family(std::string name, Collection base,
                 std::function<bool(const Nat&, const Nat&)> fiber_member,
                 std::function<std::vector<Nat>(const Nat&)> fiber_sample);

// Family with the same fiber at every base point.
Family constant_family(const Collection& base, const Collection& fiber);
Family constant_unit_family(const Collection& base);

// Desk-scale pointwise equality of families over agreeing bases.
bool family_agrees(const Family& c, const Family& d);

// An operation between families over a shared base: a curried binary code
// with {n}(x, x') landing in the target fiber at x.
struct FamilyArrow {
  Family dom;
  Family cod;
  PcaCode code;
  Fuel fuel = kDefaultFuel;
};

FamilyArrow mk_family_arrow(Family dom, Family cod, PcaCode code,
                            Fuel fuel = kDefaultFuel);
Nat family_apply(const FamilyArrow& f, const Nat& x, const Nat& xp);

FamilyArrow fam_identity(const Family& c);
FamilyArrow fam_compose(const FamilyArrow& g, const FamilyArrow& f);
bool fam_arrow_eq(const FamilyArrow& f, const FamilyArrow& g);

// Fiberwise product family B x C and its projections/pairing.
Family fam_product(const Family& b, const Family& c);
// Fiberwise tagged coproduct B + C.
Family fam_coproduct(const Family& b, const Family& c);
FamilyArrow fam_inj1(const Family& b, const Family& c);
FamilyArrow fam_inj2(const Family& b, const Family& c);
FamilyArrow fam_copair(const FamilyArrow& f, const FamilyArrow& g);
FamilyArrow fam_proj1(const Family& b, const Family& c);
FamilyArrow fam_proj2(const Family& b, const Family& c);
FamilyArrow fam_pair(const FamilyArrow& f, const FamilyArrow& g);
FamilyArrow fam_diagonal(const Family& b);

// Substitution functor along f : A -> B, sending families over B to
// families over A.
Family subst(const TrackedArrow& f, const Family& c);
FamilyArrow subst_map(const TrackedArrow& f, const FamilyArrow& g);

// Left adjoint to substitution: fibers of Sigma_f(C) at y are the pairs
// <x, c> with {f}(x) = y and c in C(x).
Family sigma_along(const TrackedArrow& f, const Family& c);
FamilyArrow sigma_along_map(const TrackedArrow& f, const FamilyArrow& g);
// Unit C -> subst(f, sigma_along(f, C)) and counit
// sigma_along(f, subst(f, D)) -> D of the adjunction.
FamilyArrow sigma_unit(const TrackedArrow& f, const Family& c);
FamilyArrow sigma_counit(const TrackedArrow& f, const Family& d);

// Weak right adjoint: fibers at y collect codes sending every sampled
// x in the f-preimage of y into C(x). No uniqueness of transposes.
Family weak_pi_along(const TrackedArrow& f, const Family& c,
                     const std::vector<PcaCode>& seeds = {});
// Transpose of g : subst(f, D) -> C into D -> weak_pi_along(f, C).
FamilyArrow weak_pi_transpose(const TrackedArrow& f, const Family& c,
                              const Family& d, const FamilyArrow& g);

// The total space Sigma(A, B) with members <a, b>, b in B(a).
Collection sigma_total(const Family& b);

// The equivalence Col(A) ~ C_r/A: I sends a family to the first projection
// from its total space, J sends an arrow into A to its fiber family.
TrackedArrow functor_I_obj(const Family& b);
TrackedArrow functor_I_map(const FamilyArrow& n);
Family functor_J_obj(const TrackedArrow& b);
FamilyArrow functor_J_map(const TrackedArrow& b, const TrackedArrow& bp,
                          const TrackedArrow& h);

// Sigma(f, C) : Sigma(A, subst(f,C)) -> Sigma(B, C), the pullback square's
// top arrow, plus the canonical mediator for a commuting cone (q, r).
TrackedArrow sigma_map(const TrackedArrow& f, const Family& c);
TrackedArrow sigma_map_mediator(const TrackedArrow& f, const Family& c,
                                const TrackedArrow& q, const TrackedArrow& r);

// Sigma^A(B, C) over A for C over Sigma(A,B); fibers hold the elements of
// Sigma(A,B) over the point paired with their C-values.
Family sigma_over(const Family& b, const Family& c);
// First projection Sigma^A(B,C) -> B as a family arrow.
FamilyArrow sigma_over_proj(const Family& b, const Family& c);
// Sigma^A(f, C) for f : B' -> B in Col(A).
FamilyArrow sigma_over_map(const FamilyArrow& f, const Family& c);

// The currying isomorphism Sigma(Sigma(A,B),C) ~ Sigma(A, Sigma^A(B,C)).
TrackedArrow cur_iso(const Family& b, const Family& c);
TrackedArrow cur_inv(const Family& b, const Family& c);

}  // namespace peff

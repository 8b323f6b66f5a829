#pragma once

#include "peff/peffcat.hpp"

namespace peff {

// A fibered equivalence relation on a family B over A: a proposition over
// Sigma(A, B x B) with realizers for the three conditions. Points are
// <a, <b, b'>>; trans takes <a, <b, <b', b''>>> and a proof pair.
struct FiberedEqRel {
  RProp rel;
  PcaCode refl;   // (<a,b>, 0) |-> proof of S_a(b,b)
  PcaCode sym;    // (<a,<b,b'>>, p) |-> proof of S_a(b',b)
  PcaCode trans;  // (<a,<b,<b',b''>>>, <p,q>) |-> proof of S_a(b,b'')
};

std::vector<Nat> fiber_rel_proofs(const FiberedEqRel& s, const Nat& a,
                                  const Nat& b, const Nat& bp);

// An extensional dependent collection over (A,[R]) with respect to the
// chosen representative: a family, a fibered relation, and a transport
// action with its three condition witnesses.
struct DepCollection {
  std::string name;
  QObject base;   // (A, R)
  Family fam;     // B over A
  FiberedEqRel s;
  PcaCode sigma;  // (<a,a'>, <b,r>) |-> element of B(a')
  PcaCode cond1;  // (<<a,a'>, <<b,b'>, r>>, p)  |-> S_{a'}(sig r b, sig r b')
  PcaCode cond2;  // (<a, <b,r>>, 0)             |-> S_a(b, sig r b)
  PcaCode cond3;  // (<<a,<a',a''>>, <b,<r,<r',r''>>>>, 0)
                  //   |-> S_{a''}(sig r'' b, sig r' (sig r b))
  bool small = false;
  std::shared_ptr<const SetFamily> small_witness;
  Fuel fuel = 8 * kDefaultFuel;
};

Nat dep_transport(const DepCollection& d, const Nat& a, const Nat& ap,
                  const Nat& r, const Nat& b);

// Validates conditions 1-3 and the derived condition 4 on samples.
DepCollection mk_depcol(std::string name, QObject base, Family fam,
                        FiberedEqRel s, PcaCode sigma, PcaCode cond1,
                        PcaCode cond2, PcaCode cond3, bool small = false,
                        std::shared_ptr<const SetFamily> small_witness = nullptr);

// Swap the representative relation of the base: h : R -> R', k : R' -> R
// as order-witness codes; the transport precomposes with k.
DepCollection retarget(const DepCollection& d, const QObject& base2,
                       const PcaCode& h, const PcaCode& k);

struct DepMorphism {
  DepCollection dom;  // (B, S, sigma)
  DepCollection cod;  // (C, H, nu)
  FamilyArrow f;      // B -> C over A
  PcaCode respect;    // (<a,<b,b'>>, s) |-> H_a(f b, f b')
  PcaCode squares;    // (<<a,a'>, <b,r>>, 0) |-> H_{a'}(nu(r, f b), f(sigma(r,b)))
};

DepMorphism mk_depmorphism(DepCollection dom, DepCollection cod, FamilyArrow f,
                           PcaCode respect, PcaCode squares);
DepMorphism dep_identity(const DepCollection& d);
DepMorphism dep_compose(const DepMorphism& g, const DepMorphism& f);
// f ~ g iff an I(f x g)-transported witness validates on samples.
bool dep_eq(const DepMorphism& f, const DepMorphism& g);

// The functor into the slice: K(B,S,sigma) is the first projection from
// Sigma(A,B) carrying the relation "<r,s> with r relating the points and s
// relating the transported fibers".
QObject k_domain(const DepCollection& d);
QArrow functor_K(const DepCollection& d);
QArrow functor_K_map(const DepMorphism& m);

// Essential surjectivity: the dependent collection of pairs (a', k) with
// k realizing R(a, f a'), its relation from R', and the transport
// tr(sym r, k).
DepCollection k_inverse(const QArrow& q);
// The slice isomorphism K(k_inverse(q)) ~ q: forward and backward arrows.
struct SliceIso {
  QArrow fwd;  // dom(K(k_inverse q)) -> dom(q)
  QArrow bwd;
};
SliceIso k_inverse_iso(const QArrow& q);

// Reindexing along p : X -> Y in the quotient category.
DepCollection reindex(const QArrow& p, const DepCollection& d);

// Monomorphism characterisation: [S] = I(m x m)*[H], checked both ways.
bool is_mono(const DepMorphism& m);

// Fiberwise pretopos structure.
DepCollection dep_terminal(const QObject& x);
DepMorphism dep_bang(const DepCollection& d);
DepCollection dep_product(const DepCollection& b, const DepCollection& c);
DepMorphism dep_proj1(const DepCollection& b, const DepCollection& c);
DepMorphism dep_proj2(const DepCollection& b, const DepCollection& c);
DepMorphism dep_pair(const DepMorphism& f, const DepMorphism& g);
DepCollection dep_initial(const QObject& x);
DepCollection dep_coproduct(const DepCollection& b, const DepCollection& c);
DepMorphism dep_inj1(const DepCollection& b, const DepCollection& c);
DepMorphism dep_inj2(const DepCollection& b, const DepCollection& c);
DepMorphism dep_copair(const DepMorphism& f, const DepMorphism& g);
DepCollection dep_equalizer(const DepMorphism& f, const DepMorphism& g);
DepMorphism dep_equalizer_incl(const DepMorphism& f, const DepMorphism& g);
DepMorphism dep_equalizer_mediate(const DepMorphism& f, const DepMorphism& g,
                                  const DepMorphism& h);
DepCollection dep_list(const DepCollection& b);
DepMorphism dep_nil(const DepCollection& b);
DepMorphism dep_cons(const DepCollection& b);

// Coequalizer of an equivalence relation presented by a span c1, c2 from
// (C,H,nu) to (B,S,sigma) together with a reflexivity section delta and
// witnesses that c1 delta ~ id ~ c2 delta.
struct DepEqRelSpan {
  DepMorphism c1, c2;
  DepMorphism delta;
  PcaCode section1;  // dep_eq witness for c1 delta ~ id
  PcaCode section2;  // dep_eq witness for c2 delta ~ id
};
DepCollection dep_coequalize_eqrel(const DepCollection& b, const DepEqRelSpan& span);
DepMorphism dep_coequalize_proj(const DepCollection& b, const DepEqRelSpan& span);

// Exponential: fibers pair relation-respecting codes with their
// preservation proofs; the relation is pointwise relatedness. A genuine
// exponential, not merely weak.
DepCollection dep_exponential(const DepCollection& b, const DepCollection& c,
                              const std::vector<PcaCode>& seeds = {});
DepMorphism dep_eval(const DepCollection& b, const DepCollection& c,
                     const std::vector<PcaCode>& seeds = {});
DepMorphism dep_transpose(const DepCollection& z, const DepCollection& b,
                          const DepCollection& c, const DepMorphism& h,
                          const std::vector<PcaCode>& seeds = {});

}  // namespace peff

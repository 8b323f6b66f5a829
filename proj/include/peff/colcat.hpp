#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "peff/errors.hpp"
#include "peff/pca.hpp"
#include "peff/realizers.hpp"

namespace peff {

inline constexpr std::size_t kSampleCap = 256;

struct SetFamily;  // setuniv.hpp

// A realized collection at desk scale: a decidable membership oracle plus a
// finite duplicate-free sample of inhabitants.
struct Collection {
  std::string name;
  std::function<bool(const Nat&)> member;
  std::vector<Nat> sample;
};

// Validates that every sample point satisfies the oracle and dedupes.
Collection mk_collection(std::string name, std::function<bool(const Nat&)> member,
                         std::vector<Nat> sample);

// Desk-scale equality of carriers: mutual sample-membership agreement.
bool carrier_agrees(const Collection& a, const Collection& b);

std::vector<Nat> cap_samples(std::vector<Nat> xs, std::size_t cap = kSampleCap);

// An operation of the base category: a code tracking dom into cod, checked on
// the domain sample at construction time.
struct TrackedArrow {
  Collection dom;
  Collection cod;
  PcaCode code;
  Fuel fuel = kDefaultFuel;
  // Present when the arrow is registered as I(set family); see setuniv.
  std::shared_ptr<const SetFamily> set_witness;
};

TrackedArrow mk_arrow(Collection dom, Collection cod, PcaCode code,
                      Fuel fuel = kDefaultFuel);

// {f}(x), throwing Error("divergence") when evaluation does not complete.
Nat arrow_apply(const TrackedArrow& f, const Nat& x);

TrackedArrow identity(const Collection& a);
TrackedArrow compose(const TrackedArrow& g, const TrackedArrow& f);

// Extensional equality on every sample point of the (shared) domain.
bool arrow_eq(const TrackedArrow& f, const TrackedArrow& g);

// Finite-limit / coproduct / list / weak-exponential structure.
Collection terminal();
TrackedArrow bang(const Collection& a);

Collection product(const Collection& a, const Collection& b);
TrackedArrow proj1(const Collection& a, const Collection& b);
TrackedArrow proj2(const Collection& a, const Collection& b);
// <f,g> : X -> A x B for f : X -> A, g : X -> B.
TrackedArrow pair_arrow(const TrackedArrow& f, const TrackedArrow& g);
// f x g : A x B -> A' x B'.
TrackedArrow product_map(const TrackedArrow& f, const TrackedArrow& g);
TrackedArrow diagonal(const Collection& a);

Collection initial();
Collection coproduct(const Collection& a, const Collection& b);
TrackedArrow inj1(const Collection& a, const Collection& b);
TrackedArrow inj2(const Collection& a, const Collection& b);
// [f,g] : A + B -> C.
TrackedArrow copair(const TrackedArrow& f, const TrackedArrow& g);

Collection equalizer(const TrackedArrow& f, const TrackedArrow& g);
TrackedArrow equalizer_incl(const TrackedArrow& f, const TrackedArrow& g);
// Factor a commuting h through the equalizer inclusion.
TrackedArrow equalizer_mediate(const TrackedArrow& f, const TrackedArrow& g,
                               const TrackedArrow& h);

// Lists over A: nil = <0,0>, cons(h,t) = <1,<h,t>>.
Nat list_nil_value();
Nat list_cons_value(const Nat& head, const Nat& tail);
std::optional<std::vector<Nat>> list_decode(const Nat& v,
                                            const std::function<bool(const Nat&)>& elem);
Nat list_encode(const std::vector<Nat>& xs);

Collection list_object(const Collection& a, std::size_t max_len = 3);
TrackedArrow list_nil_arrow(const Collection& a);
TrackedArrow list_cons_arrow(const Collection& a);
// Fold with z : B for nil and step : code with {step}(head)(acc) in B.
TrackedArrow list_fold(const Collection& a, const Collection& b, const Nat& z,
                       const PcaCode& step, Fuel fuel = 10 * kDefaultFuel);

// Collection of codes tracking A into B; samples harvested from a bounded
// term enumeration plus any registered seed codes. Transposes exist but are
// not unique (weak exponential).
Collection weak_exponential(const Collection& a, const Collection& b,
                            const std::vector<PcaCode>& seeds = {});
TrackedArrow weak_eval(const Collection& a, const Collection& b,
                       const std::vector<PcaCode>& seeds = {});
// Transpose of f : X x A -> B as a finite dispatch over X's sample.
TrackedArrow weak_transpose(const Collection& x, const Collection& a,
                            const Collection& b, const TrackedArrow& f,
                            const std::vector<PcaCode>& seeds = {});

}  // namespace peff

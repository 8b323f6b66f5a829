#pragma once

#include <memory>
#include <optional>

#include "peff/fam.hpp"

namespace peff {

// Inductive codes for the universe of realized sets. Codes are Cantor-tagged
// naturals; Sigma/Pi carry a PCA code mapping elements of the base to
// further set codes.
struct SetCode {
  enum class Kind { Empty, Unit, Nat, Sum, Sigma, Pi, List } kind;
  Nat bound;                           // Nat: sampling bound; List: max length
  std::shared_ptr<const SetCode> l, r; // Sum children; Sigma/Pi/List base in l
  PcaCode fam;                         // Sigma/Pi dependent part

  static SetCode empty();
  static SetCode unit();
  static SetCode nat(Nat bound);
  static SetCode sum(SetCode l, SetCode r);
  static SetCode sigma(SetCode base, PcaCode fam);
  static SetCode pi(SetCode base, PcaCode fam);
  static SetCode list(SetCode elem, Nat max_len);
};

Nat encode_set(const SetCode& c);
std::optional<SetCode> decode_set_code(const Nat& n);

// Structural validity, bounded in depth; the oracle of the universe carrier.
bool valid_set_code(const Nat& n);

// The sigma and pi combinators on codes.
Nat sigma_code(const Nat& base, const PcaCode& fam);
Nat pi_code(const Nat& base, const PcaCode& fam);
Nat sum_code(const Nat& l, const Nat& r);
Nat list_code(const Nat& elem, const Nat& max_len);
Nat unit_code();
Nat empty_code();
Nat nat_code(const Nat& bound);

// Decoding a set code yields a collection: a decidable oracle plus a finite
// sample. Nat codes sample below their bound while the oracle accepts every
// natural; Pi membership is checked on the base sample only.
Collection decode_set(const Nat& code, Fuel fuel = kDefaultFuel);

// The universe carrier U_S.
Collection universe();

// tau_A(n): the family classified by an arrow into the universe.
struct SetFamily {
  Family family;
  TrackedArrow classifier;
};

SetFamily tau(const Collection& a, const TrackedArrow& classifier);

// Builds the classifier from per-sample-point codes (table realizer) and a
// fallback code for points outside the sample.
TrackedArrow classifier_table(const Collection& a,
                              const std::function<Nat(const Nat&)>& code_at,
                              const Nat& fallback);

// First projection of a set family's total space, registered set-fibred.
TrackedArrow set_I(const SetFamily& s);
// I on a set-level arrow, registered set-fibred via the graph family over
// Sigma(A, T): fibers collect the domain elements mapped onto the point.
TrackedArrow set_I_map(const SetFamily& s, const SetFamily& t,
                       const FamilyArrow& f);

// Witness registry lookup; absence of a witness is not a refutation.
std::optional<SetFamily> is_set_fibred(const TrackedArrow& f);

// Set-level structure, closed under the base category's constructions.
SetFamily set_constant(const Collection& a, const Nat& code);
SetFamily set_terminal_family(const Collection& a);
SetFamily set_initial_family(const Collection& a);
SetFamily set_product(const SetFamily& s, const SetFamily& t);
SetFamily set_coproduct(const SetFamily& s, const SetFamily& t);
SetFamily set_equalizer(const SetFamily& s, const SetFamily& t,
                        const FamilyArrow& f, const FamilyArrow& g);
SetFamily set_list(const SetFamily& s, const Nat& max_len = 3);
SetFamily set_weak_exponential(const SetFamily& s, const SetFamily& t);

}  // namespace peff

#include "peff/pca.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "peff/errors.hpp"

namespace peff {

TermPtr var_(std::uint32_t index) {
  auto t = std::make_shared<Term>(Term(Term::Tag::Var));
  const_cast<Term&>(*t).index = index;
  return t;
}

TermPtr lit_(Nat n) {
  auto t = std::make_shared<Term>(Term(Term::Tag::Lit));
  const_cast<Term&>(*t).lit = std::move(n);
  return t;
}

namespace {

TermPtr unary(Term::Tag tag, TermPtr a) {
  auto t = std::make_shared<Term>(Term(tag));
  const_cast<Term&>(*t).a = std::move(a);
  return t;
}

TermPtr binary(Term::Tag tag, TermPtr a, TermPtr b) {
  auto t = std::make_shared<Term>(Term(tag));
  const_cast<Term&>(*t).a = std::move(a);
  const_cast<Term&>(*t).b = std::move(b);
  return t;
}

}  // namespace

TermPtr lam_(TermPtr body) { return unary(Term::Tag::Lam, std::move(body)); }
TermPtr app_(TermPtr fn, TermPtr arg) { return binary(Term::Tag::App, std::move(fn), std::move(arg)); }
TermPtr succ_(TermPtr t) { return unary(Term::Tag::Succ, std::move(t)); }
TermPtr pair_(TermPtr l, TermPtr r) { return binary(Term::Tag::Pair, std::move(l), std::move(r)); }
TermPtr fst_(TermPtr t) { return unary(Term::Tag::Fst, std::move(t)); }
TermPtr snd_(TermPtr t) { return unary(Term::Tag::Snd, std::move(t)); }
TermPtr fix_(TermPtr body) { return unary(Term::Tag::Fix, std::move(body)); }

TermPtr natcase_(TermPtr scrut, TermPtr zero, TermPtr succ_branch) {
  auto t = std::make_shared<Term>(Term(Term::Tag::NatCase));
  const_cast<Term&>(*t).a = std::move(scrut);
  const_cast<Term&>(*t).b = std::move(zero);
  const_cast<Term&>(*t).c = std::move(succ_branch);
  return t;
}

bool term_eq(const TermPtr& s, const TermPtr& t) {
  if (s == t) return true;
  if (!s || !t || s->tag != t->tag) return false;
  switch (s->tag) {
    case Term::Tag::Var: return s->index == t->index;
    case Term::Tag::Lit: return s->lit == t->lit;
    case Term::Tag::Lam:
    case Term::Tag::Succ:
    case Term::Tag::Fst:
    case Term::Tag::Snd:
    case Term::Tag::Fix: return term_eq(s->a, t->a);
    case Term::Tag::App:
    case Term::Tag::Pair: return term_eq(s->a, t->a) && term_eq(s->b, t->b);
    case Term::Tag::NatCase:
      return term_eq(s->a, t->a) && term_eq(s->b, t->b) && term_eq(s->c, t->c);
  }
  return false;
}

namespace {

// Number of binders a child sits under relative to its parent.
int binder_shift(Term::Tag tag, int child) {
  switch (tag) {
    case Term::Tag::Lam:
    case Term::Tag::Fix: return 1;
    case Term::Tag::NatCase: return child == 2 ? 1 : 0;
    default: return 0;
  }
}

bool closed_under(const TermPtr& t, std::uint32_t depth) {
  switch (t->tag) {
    case Term::Tag::Var: return t->index < depth;
    case Term::Tag::Lit: return true;
    case Term::Tag::Lam:
    case Term::Tag::Fix: return closed_under(t->a, depth + 1);
    case Term::Tag::Succ:
    case Term::Tag::Fst:
    case Term::Tag::Snd: return closed_under(t->a, depth);
    case Term::Tag::App:
    case Term::Tag::Pair: return closed_under(t->a, depth) && closed_under(t->b, depth);
    case Term::Tag::NatCase:
      return closed_under(t->a, depth) && closed_under(t->b, depth) &&
             closed_under(t->c, depth + 1);
  }
  return false;
}

}  // namespace

bool term_closed(const TermPtr& t) { return closed_under(t, 0); }

std::string term_print(const TermPtr& t) {
  switch (t->tag) {
    case Term::Tag::Var: return "(var " + std::to_string(t->index) + ")";
    case Term::Tag::Lit: return "(lit " + nat_str(t->lit) + ")";
    case Term::Tag::Lam: return "(lam " + term_print(t->a) + ")";
    case Term::Tag::App: return "(app " + term_print(t->a) + " " + term_print(t->b) + ")";
    case Term::Tag::Succ: return "(succ " + term_print(t->a) + ")";
    case Term::Tag::NatCase:
      return "(natcase " + term_print(t->a) + " " + term_print(t->b) + " " +
             term_print(t->c) + ")";
    case Term::Tag::Pair: return "(pair " + term_print(t->a) + " " + term_print(t->b) + ")";
    case Term::Tag::Fst: return "(fst " + term_print(t->a) + ")";
    case Term::Tag::Snd: return "(snd " + term_print(t->a) + ")";
    case Term::Tag::Fix: return "(fix " + term_print(t->a) + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Godel coding: tag byte, LEB128 payloads, children in order. The serialized
// stream is prefix-free per node, so decoding is unambiguous; a 0x01 sentinel
// byte keeps leading zeros and makes 0 an invalid code.

namespace {

void put_leb128(const Nat& n0, std::vector<std::uint8_t>& out) {
  if (n0 == 0) {
    out.push_back(0);
    return;
  }
  // Chunked export keeps serialization linear in the payload size.
  std::vector<std::uint8_t> chunks;
  export_bits(n0, std::back_inserter(chunks), 7, false);
  for (std::size_t i = 0; i + 1 < chunks.size(); ++i)
    out.push_back(static_cast<std::uint8_t>(chunks[i] | 0x80));
  out.push_back(chunks.back());
}

void serialize(const TermPtr& t, std::vector<std::uint8_t>& out) {
  out.push_back(static_cast<std::uint8_t>(t->tag));
  switch (t->tag) {
    case Term::Tag::Var: put_leb128(t->index, out); return;
    case Term::Tag::Lit: put_leb128(t->lit, out); return;
    case Term::Tag::Lam:
    case Term::Tag::Succ:
    case Term::Tag::Fst:
    case Term::Tag::Snd:
    case Term::Tag::Fix: serialize(t->a, out); return;
    case Term::Tag::App:
    case Term::Tag::Pair:
      serialize(t->a, out);
      serialize(t->b, out);
      return;
    case Term::Tag::NatCase:
      serialize(t->a, out);
      serialize(t->b, out);
      serialize(t->c, out);
      return;
  }
}

struct Reader {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;
  bool ok = true;

  std::optional<std::uint8_t> next() {
    if (pos >= bytes.size()) return std::nullopt;
    return bytes[pos++];
  }

  std::optional<Nat> leb128() {
    std::vector<std::uint8_t> chunks;
    for (;;) {
      auto b = next();
      if (!b) return std::nullopt;
      chunks.push_back(*b & 0x7f);
      if ((*b & 0x80) == 0) break;
    }
    Nat value = 0;
    import_bits(value, chunks.begin(), chunks.end(), 7, false);
    return value;
  }

  TermPtr term() {
    auto tb = next();
    if (!tb || *tb > static_cast<std::uint8_t>(Term::Tag::Fix)) return nullptr;
    auto tag = static_cast<Term::Tag>(*tb);
    switch (tag) {
      case Term::Tag::Var: {
        auto n = leb128();
        if (!n || *n > 0xffffffffu) return nullptr;
        return var_(n->convert_to<std::uint32_t>());
      }
      case Term::Tag::Lit: {
        auto n = leb128();
        if (!n) return nullptr;
        return lit_(*n);
      }
      case Term::Tag::Lam:
      case Term::Tag::Succ:
      case Term::Tag::Fst:
      case Term::Tag::Snd:
      case Term::Tag::Fix: {
        auto a = term();
        if (!a) return nullptr;
        return unary(tag, a);
      }
      case Term::Tag::App:
      case Term::Tag::Pair: {
        auto a = term();
        auto b = a ? term() : nullptr;
        if (!b) return nullptr;
        return binary(tag, a, b);
      }
      case Term::Tag::NatCase: {
        auto a = term();
        auto b = a ? term() : nullptr;
        auto c = b ? term() : nullptr;
        if (!c) return nullptr;
        return natcase_(a, b, c);
      }
    }
    return nullptr;
  }
};

}  // namespace

PcaCode encode(const TermPtr& t) {
  if (!term_closed(t)) throw Error("open-term", "encode requires a closed term: " + term_print(t));
  std::vector<std::uint8_t> bytes{0x01};
  serialize(t, bytes);
  Nat code;
  import_bits(code, bytes.begin(), bytes.end(), 8, true);
  return code;
}

namespace {

// Applying an embedded code re-reads it on every call; terms are immutable,
// so a synchronized memo has no observable effect on results.
std::mutex decode_mutex;
std::map<Nat, TermPtr> decode_cache;
constexpr std::size_t kDecodeCacheCap = 1 << 15;

}  // namespace

std::optional<TermPtr> decode(const PcaCode& code) {
  if (code <= 0) return std::nullopt;
  {
    std::lock_guard<std::mutex> lock(decode_mutex);
    auto it = decode_cache.find(code);
    if (it != decode_cache.end()) {
      if (!it->second) return std::nullopt;
      return it->second;
    }
  }
  std::vector<std::uint8_t> bytes;
  export_bits(code, std::back_inserter(bytes), 8, true);
  TermPtr t;
  if (!bytes.empty() && bytes[0] == 0x01) {
    std::vector<std::uint8_t> payload(bytes.begin() + 1, bytes.end());
    Reader r{payload};
    t = r.term();
    if (t && (r.pos != payload.size() || !term_closed(t))) t = nullptr;
  }
  {
    std::lock_guard<std::mutex> lock(decode_mutex);
    if (decode_cache.size() >= kDecodeCacheCap) decode_cache.clear();
    decode_cache.emplace(code, t);
  }
  if (!t) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation.

TermPtr term_lift(const TermPtr& t, std::uint32_t cutoff) {
  switch (t->tag) {
    case Term::Tag::Var: return t->index >= cutoff ? var_(t->index + 1) : t;
    case Term::Tag::Lit: return t;
    case Term::Tag::Lam:
    case Term::Tag::Fix: {
      auto a = term_lift(t->a, cutoff + 1);
      return a == t->a ? t : unary(t->tag, a);
    }
    case Term::Tag::Succ:
    case Term::Tag::Fst:
    case Term::Tag::Snd: {
      auto a = term_lift(t->a, cutoff);
      return a == t->a ? t : unary(t->tag, a);
    }
    case Term::Tag::App:
    case Term::Tag::Pair: {
      auto a = term_lift(t->a, cutoff);
      auto b = term_lift(t->b, cutoff);
      return a == t->a && b == t->b ? t : binary(t->tag, a, b);
    }
    case Term::Tag::NatCase: {
      auto a = term_lift(t->a, cutoff);
      auto b = term_lift(t->b, cutoff);
      auto c = term_lift(t->c, cutoff + 1);
      return a == t->a && b == t->b && c == t->c ? t : natcase_(a, b, c);
    }
  }
  return t;
}

namespace {

// Substitute the closed term `s` for variable `depth`; variables above shift
// down one binder.
TermPtr subst(const TermPtr& t, std::uint32_t depth, const TermPtr& s) {
  switch (t->tag) {
    case Term::Tag::Var:
      if (t->index == depth) return s;
      if (t->index > depth) return var_(t->index - 1);
      return t;
    case Term::Tag::Lit: return t;
    case Term::Tag::Lam:
    case Term::Tag::Fix: {
      auto a = subst(t->a, depth + 1, s);
      return a == t->a ? t : unary(t->tag, a);
    }
    case Term::Tag::Succ:
    case Term::Tag::Fst:
    case Term::Tag::Snd: {
      auto a = subst(t->a, depth, s);
      return a == t->a ? t : unary(t->tag, a);
    }
    case Term::Tag::App:
    case Term::Tag::Pair: {
      auto a = subst(t->a, depth, s);
      auto b = subst(t->b, depth, s);
      return a == t->a && b == t->b ? t : binary(t->tag, a, b);
    }
    case Term::Tag::NatCase: {
      auto a = subst(t->a, depth, s);
      auto b = subst(t->b, depth, s);
      auto c = subst(t->c, depth + 1, s);
      return a == t->a && b == t->b && c == t->c ? t : natcase_(a, b, c);
    }
  }
  return t;
}

struct Machine {
  Fuel fuel;
  bool exhausted = false;
  std::string stuck;

  std::optional<Nat> run(TermPtr t) {
    for (;;) {
      if (fuel == 0) {
        exhausted = true;
        return std::nullopt;
      }
      --fuel;
      switch (t->tag) {
        case Term::Tag::Lit: return t->lit;
        case Term::Tag::Var:
          stuck = "unbound variable";
          return std::nullopt;
        case Term::Tag::Lam: return encode(t);
        case Term::Tag::Succ: {
          auto v = run(t->a);
          if (!v) return std::nullopt;
          return *v + 1;
        }
        case Term::Tag::Pair: {
          auto l = run(t->a);
          if (!l) return std::nullopt;
          auto r = run(t->b);
          if (!r) return std::nullopt;
          return cantor_pair(*l, *r);
        }
        case Term::Tag::Fst: {
          auto v = run(t->a);
          if (!v) return std::nullopt;
          return cantor_fst(*v);
        }
        case Term::Tag::Snd: {
          auto v = run(t->a);
          if (!v) return std::nullopt;
          return cantor_snd(*v);
        }
        case Term::Tag::App: {
          auto f = run(t->a);
          if (!f) return std::nullopt;
          auto a = run(t->b);
          if (!a) return std::nullopt;
          auto fn = decode(*f);
          if (!fn) {
            stuck = "applied value is not a valid code";
            return std::nullopt;
          }
          if ((*fn)->tag == Term::Tag::Lam) {
            t = subst((*fn)->a, 0, lit_(*a));
          } else {
            // Kleene application evaluates the decoded term to a function
            // value first (e.g. a fix unfolding to a lambda).
            t = app_(*fn, lit_(*a));
          }
          continue;
        }
        case Term::Tag::NatCase: {
          auto v = run(t->a);
          if (!v) return std::nullopt;
          if (*v == 0) {
            t = t->b;
          } else {
            t = subst(t->c, 0, lit_(*v - 1));
          }
          continue;
        }
        case Term::Tag::Fix: {
          TermPtr self = t;
          t = subst(t->a, 0, self);
          continue;
        }
      }
    }
  }
};

}  // namespace

std::string EvalOutcome::describe() const {
  switch (kind) {
    case Kind::Value: return "value " + nat_str(value);
    case Kind::FuelExhausted: return "fuel exhausted";
    case Kind::Stuck: return "stuck (" + reason + ")";
  }
  return "?";
}

bool outcome_eq(const EvalOutcome& x, const EvalOutcome& y) {
  if (x.kind != y.kind) return false;
  if (x.kind == EvalOutcome::Kind::Value) return x.value == y.value;
  return true;
}

EvalOutcome eval(const TermPtr& t, Fuel fuel) {
  if (!term_closed(t)) return EvalOutcome::stuck("open term");
  Machine m{fuel};
  auto v = m.run(t);
  if (v) return EvalOutcome::val(*v);
  if (m.exhausted) return EvalOutcome::fuel_exhausted();
  return EvalOutcome::stuck(m.stuck);
}

EvalOutcome apply(const PcaCode& code, const Nat& arg, Fuel fuel) {
  auto t = decode(code);
  if (!t) return EvalOutcome::stuck("invalid-code");
  return eval(app_(*t, lit_(arg)), fuel);
}

EvalOutcome apply2(const PcaCode& code, const Nat& x, const Nat& y, Fuel fuel) {
  auto first = apply(code, x, fuel);
  if (!first.is_value()) return first;
  return apply(first.value, y, fuel);
}

PcaCode abstract(const TermPtr& body) {
  auto wrapped = lam_(body);
  if (!term_closed(wrapped))
    throw Error("open-term", "abstract body may use exactly one free variable");
  return encode(wrapped);
}

// ---------------------------------------------------------------------------
// Bounded enumeration of small closed unary lambdas.

namespace {

// Bodies with exactly `nodes` nodes over vars, small literals, succ, fst,
// snd, pair. NatCase/Fix/App are left out to keep the pool total and small.
std::vector<TermPtr> bodies_of_size(std::size_t nodes) {
  std::vector<TermPtr> out;
  if (nodes == 0) return out;
  if (nodes == 1) {
    out.push_back(var_(0));
    out.push_back(lit_(0));
    out.push_back(lit_(1));
    return out;
  }
  for (const auto& t : bodies_of_size(nodes - 1)) {
    out.push_back(succ_(t));
    out.push_back(fst_(t));
    out.push_back(snd_(t));
  }
  for (std::size_t left = 1; left + 1 < nodes; ++left) {
    auto ls = bodies_of_size(left);
    auto rs = bodies_of_size(nodes - 1 - left);
    for (const auto& l : ls)
      for (const auto& r : rs) out.push_back(pair_(l, r));
  }
  return out;
}

}  // namespace

std::vector<PcaCode> enumerate_unary_codes(std::size_t max_body_nodes, std::size_t cap) {
  std::vector<PcaCode> codes;
  for (std::size_t n = 1; n <= max_body_nodes && codes.size() < cap; ++n) {
    for (const auto& b : bodies_of_size(n)) {
      codes.push_back(encode(lam_(b)));
      if (codes.size() >= cap) break;
    }
  }
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

}  // namespace peff

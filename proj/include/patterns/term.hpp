#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patterns/dilator.hpp"
#include "patterns/ordinal.hpp"

namespace patterns {

// (sigma; g0, ..., g_{n-1}; base): an element of the term extension over base.
struct Term {
  Ordinal sigma;
  std::vector<ExtendedBase> args;
  ExtendedBase base;
  bool operator==(const Term&) const = default;
};

// A term with its base stripped, (sigma; g0, ..., g_{n-1}).
struct Representation {
  Ordinal sigma;
  std::vector<ExtendedBase> args;
  bool operator==(const Representation&) const = default;
};

std::string render(const Term& t);
std::string render(const Representation& r);
Term parse_term(std::string_view text);
Representation parse_representation(std::string_view text);

// Throws DilatorError unless (sigma, n) is a trace element and the args are
// strictly increasing and below the base.
void check_term(const Dilator& d, const Term& t);
bool is_trace_element(const Dilator& d, const Ordinal& sigma, int n);

// Terms must share a base; both are checked.
std::strong_ordering term_compare(const Dilator& d, const Term& s, const Term& t);
// Base-free comparison of two constructor/argument pairs.
std::strong_ordering compare_args(const Dilator& d, const Ordinal& s, const std::vector<ExtendedBase>& c,
                                  const Ordinal& t, const std::vector<ExtendedBase>& e);

// A strictly increasing base map given by finitely many points plus an
// optional tail rule: identity below xi, x |-> shift + x from xi on.
struct Embedding {
  std::vector<std::pair<ExtendedBase, ExtendedBase>> points;
  std::optional<ExtendedBase> xi;
  Ordinal shift;

  std::optional<ExtendedBase> operator()(const ExtendedBase& x) const;
  static Embedding identity() { return Embedding{{}, ExtendedBase(), Ordinal()}; }
  static Embedding shift_from(ExtendedBase xi, Ordinal s) { return Embedding{{}, std::move(xi), std::move(s)}; }
};

Term term_map(const Dilator& d, const Embedding& f, const Term& t, const ExtendedBase& new_base);
std::vector<ExtendedBase> term_support(const Term& t);

// (mu_1(0); gamma; alpha). Requires normality data and gamma < alpha.
Term mu_bar(const Dilator& d, const ExtendedBase& alpha, const ExtendedBase& gamma);

Representation representation(const Dilator& d, const Term& t);
// Inverse of `representation`; requires n == 0 or last arg < base.
Term attach(const Dilator& d, const Representation& r, const ExtendedBase& base);
// Smallest base over which r is a term: last arg + 1, or 0 for nullary.
ExtendedBase minimal_base(const Representation& r);
std::strong_ordering repr_compare(const Dilator& d, const Representation& a, const Representation& b);

// Ordinal values of representations for a normal dilator. Finite arguments
// are evaluated through the finite functor; infinite arguments need a closed
// form (identity, sigma(const(c)), sum(const(c), E)). Throws DilatorError
// when neither applies.
Ordinal repr_value(const Dilator& d, const Representation& r);
Representation repr_of_ordinal(const Dilator& d, const Ordinal& gamma);

// Order navigation inside the term extension over a fixed base.
struct MaxInfo {
  enum class State { empty, attained, unbounded } state = State::empty;
  std::optional<Term> term;
};
std::optional<Term> term_min(const Dilator& d, const ExtendedBase& alpha);
MaxInfo term_max(const Dilator& d, const ExtendedBase& alpha);
std::optional<Term> term_succ(const Dilator& d, const Term& t);
OrdKind term_classify(const Dilator& d, const Term& t);
// All terms over a finite base, ascending.
std::vector<Term> enumerate_terms(const Dilator& d, const Ordinal& alpha);

struct WfProbe {
  bool refuted = false;
  // t, F(t), F(F(t)) for the embedding F below; F(t) < t forces an infinite
  // descent F^k(t).
  std::vector<Term> chain;
  std::optional<Embedding> embedding;
  std::size_t steps = 0;
};
WfProbe wf_probe(const Dilator& d, const ExtendedBase& alpha, std::size_t budget, std::uint64_t seed = 1);

}  // namespace patterns

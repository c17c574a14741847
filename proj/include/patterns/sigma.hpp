#pragma once

#include <cstdint>
#include <optional>

#include "patterns/dilator.hpp"
#include "patterns/report.hpp"
#include "patterns/term.hpp"

namespace patterns {

struct SigmaPresentation {
  Dilator underlying;
  Dilator sigma;
};

// Validates D up to `bound` and throws DilatorError naming the first failed
// law; ΣD itself is built structurally.
SigmaPresentation sigma_dilator(const Dilator& d, int bound = 8);

// xi_alpha: D̄(alpha) -> Σ̄D(alpha+1), (σ; a; alpha) |-> (ΣD(n)+1+σ; a, alpha; alpha+1).
Term xi_embed(const Dilator& d, const ExtendedBase& alpha, const Term& t);

// E(rho) as a representation, (mu_1(0); rho).
Representation e_point(const Dilator& e, const ExtendedBase& rho);

// sup of (non-final args)+1. Throws DilatorError on nullary representations.
ExtendedBase star(const Dilator& e, const Representation& r);
// Replaces the final argument. Throws DilatorError when delta < r*.
Representation substitute_last(const Dilator& e, const Representation& r, const ExtendedBase& delta);

// Order structure on representations (base-free).
Representation repr_succ(const Dilator& e, const Representation& r);
OrdKind repr_classify(const Dilator& e, const Representation& r);

// Clauses (a)-(g) of the fundamental lemma on sampled instances. Each law
// reports how many premise-satisfying instances were evaluated; a clause whose
// premise is structurally unsatisfiable for e is marked as such in its note.
Report check_fund_basic(const Dilator& e, std::size_t samples, std::uint64_t seed);

}  // namespace patterns

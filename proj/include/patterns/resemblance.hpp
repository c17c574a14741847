#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "patterns/dilator.hpp"
#include "patterns/term.hpp"

namespace patterns {

enum class Semantics { exact, relativized };

// A finite set of ordinals read as an L_D-structure. D is either normal
// (representation symbols present) or trace-empty (pure {<=, <=_1} language).
struct PatternStructure {
  Dilator dilator;
  std::vector<Ordinal> universe;  // ascending, distinct
  Semantics semantics = Semantics::relativized;

  static PatternStructure segment(const Dilator& d, std::uint64_t n);
  static PatternStructure relativized(const Dilator& d, std::vector<Ordinal> universe);
};

struct Leq1Options {
  std::size_t max_universe = 48;
  // Finite witnesses considered beyond the largest finite universe element,
  // per element of Y (relativized semantics only).
  std::uint64_t padding_per_element = 8;
};

class Leq1Table {
 public:
  Leq1Table(PatternStructure s, bool forward_only);

  const PatternStructure& structure() const { return s_; }
  const std::vector<Ordinal>& universe() const { return s_.universe; }
  bool forward_only() const { return forward_only_; }
  bool has_representations() const { return has_repr_; }

  // a <=_1 b. Either argument may be a universe element or a finite ordinal;
  // pairs of infinite ordinals outside the universe throw.
  bool holds(const Ordinal& a, const Ordinal& b) const;
  bool holds_at(std::size_t i, std::size_t j) const { return verdict_[i][j]; }
  // Representation of any ordinal usable in the structure; nullopt for the
  // pure language.
  const std::optional<Representation>& repr(const Ordinal& x) const;
  std::optional<std::size_t> index_of(const Ordinal& x) const;

  bool same_relation(const Leq1Table& other) const;

 private:
  friend Leq1Table build_leq1(const PatternStructure&, bool, const Leq1Options&);
  PatternStructure s_;
  bool forward_only_;
  bool has_repr_;
  std::vector<std::vector<bool>> verdict_;
  mutable std::map<Ordinal, std::optional<Representation>> reprs_;
};

// Relation of the official definition: quantifiers over subsets of the
// universe, witnesses from the universe plus finite padding below alpha.
Leq1Table leq1_table(const PatternStructure& s, const Leq1Options& opt = {});
// Same quantifiers, but {<=, <=_1}-isomorphisms with representation atoms
// transferred forwards only.
Leq1Table leq1_criterion(const PatternStructure& s, const Leq1Options& opt = {});

// Brute force over every (X, Y) and every witness set; for small universes.
bool leq1_bruteforce(const Leq1Table& t, const Ordinal& alpha, const Ordinal& beta);

std::string render_tsv(const Leq1Table& t);
std::string render_dot(const Leq1Table& t);

// ---------------------------------------------------------------------------
// Existential formulas of L_D.

struct Sigma1Var {
  bool param = false;
  int index = 0;
  bool operator==(const Sigma1Var&) const = default;
};

struct Sigma1Node {
  enum class Op { truth, le, leq1, repr, conj, disj, neg } op = Op::truth;
  Ordinal sigma;                 // repr only
  std::vector<Sigma1Var> terms;  // le/leq1: two; repr: head then args
  std::vector<Sigma1Node> kids;
};

struct Sigma1 {
  int vars = 0;
  Sigma1Node matrix;
};

std::string render(const Sigma1& phi);
// Throws std::invalid_argument on malformed formulas (bad arity, index out of
// range).
void check_formula(const Sigma1& phi, std::size_t params);
// Witnesses range over universe elements below `below` (whole universe when
// unset); parameters must be universe elements.
bool sigma1_holds(const Leq1Table& t, const Sigma1& phi, const std::vector<Ordinal>& params,
                  const std::optional<Ordinal>& below = std::nullopt);
// Complete atomic type of params followed by witnesses, quantifying the
// witnesses; true in the structure by construction.
Sigma1 diagram_formula(const Leq1Table& t, const std::vector<Ordinal>& params, const std::vector<Ordinal>& witnesses);

// ---------------------------------------------------------------------------
// Closures and slices.

std::vector<Ordinal> cl(const Dilator& d, const Ordinal& gamma);
std::vector<Ordinal> closure(const Dilator& d, const std::vector<Ordinal>& z);

struct Slice {
  std::vector<Ordinal> members;
  std::vector<Ordinal> undetermined;
};

// {delta in U | delta >= gamma* and delta <=_1 gamma[delta]}.
Slice club_slice(const Leq1Table& t, const Representation& gamma);

// ---------------------------------------------------------------------------
// The symbolic-Omega order: <sigma; g_0..g_{n-1}> stands for
// (sigma; g_0, ..., g_{n-1}, Omega).

struct DDElement {
  Ordinal sigma;
  std::vector<Ordinal> args;
  bool operator==(const DDElement&) const = default;
};

std::string render(const DDElement& r);
void check_dd(const Dilator& d, const DDElement& r);
std::strong_ordering dd_compare(const Dilator& d, const DDElement& a, const DDElement& b);
Ordinal dd_plus(const DDElement& r);
Representation dd_substitute(const DDElement& r, const Ordinal& delta);
// Members of DD(eta) of arity <= max_args + 1 with args drawn from `pool`
// (ordinals below eta), ascending in the DD order.
std::vector<DDElement> dd_members(const Dilator& d, const Ordinal& eta, int max_args, const std::vector<Ordinal>& pool);

// Intersection of club_slice over the index terms rho<W> for rho in DD(eta)
// (args from the universe and finite ordinals below eta) with rho<W> < gamma.
struct FdSlice {
  Slice slice;
  std::vector<Representation> index;
};
FdSlice fd_slice(const Leq1Table& t, const Representation& gamma, const Ordinal& eta, const Ordinal& window, int max_args = 2);

}  // namespace patterns

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "patterns/ordinal.hpp"
#include "patterns/report.hpp"

namespace patterns {

// Strictly increasing map {0..dom-1} -> {0..cod-1}.
struct Morphism {
  int dom = 0;
  int cod = 0;
  std::vector<int> map;

  int operator()(int i) const { return map[static_cast<std::size_t>(i)]; }
  bool operator==(const Morphism&) const = default;
};

Morphism identity_map(int n);
// delta_i : n -> n+1, skipping i.
Morphism coface(int n, int i);
// g after f; requires f.cod == g.dom.
Morphism compose(const Morphism& g, const Morphism& f);
// The increasing enumeration of `subset` (sorted) as a map |subset| -> n.
Morphism enumerate(const std::vector<int>& subset, int n);
// Throws std::invalid_argument unless strictly increasing and in range.
void check_morphism(const Morphism& f);
// Coface steps (n, i), applied left to right, whose composite is f. The
// ascending decomposition skips the gaps of rng(f) from smallest to largest;
// the descending one from largest to smallest.
std::vector<std::pair<int, int>> coface_decomposition(const Morphism& f, bool descending = false);
// All strictly increasing maps m -> n in lexicographic order.
std::vector<Morphism> all_morphisms(int m, int n);

struct FiniteTable {
  int bound = 0;
  std::vector<std::uint64_t> values;                              // D(0..bound)
  std::vector<std::vector<std::vector<std::uint64_t>>> cofaces;   // [n][i][sigma], n < bound
  std::vector<std::vector<std::vector<int>>> supports;            // [n][sigma]
  std::optional<std::vector<std::vector<std::uint64_t>>> mu;      // [n][k]
};

// mu[n][k] for n <= bound, k < n.
struct NormalityData {
  std::vector<std::vector<Ordinal>> mu;
};

struct TraceElement {
  Ordinal sigma;
  int arity = 0;
  bool operator==(const TraceElement&) const = default;
};

class DilatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coded pre-dilator: either a finite table or a combinator expression with
// closed-form value, action and support rules. Immutable; copies share nodes.
class Dilator {
 public:
  enum class Kind { table, constant, identity, sum, sigma };

  static Dilator constant(Ordinal nu);
  static Dilator identity();
  static Dilator sum(const Dilator& a, const Dilator& b);
  static Dilator sigma(const Dilator& d);
  // Checks only shape (sizes, index ranges); laws are the validators' job.
  static Dilator table(FiniteTable t);

  Kind kind() const;
  // Largest arity with data; nullopt when unbounded.
  std::optional<int> bound() const;
  const Dilator& child(std::size_t i) const;
  const Ordinal& const_value() const;
  const FiniteTable& table_data() const;

  Ordinal value(int n) const;
  bool contains(int n, const Ordinal& sigma) const { return sigma < value(n); }
  // D(f)(sigma) for sigma in D(f.dom).
  Ordinal apply(const Morphism& f, const Ordinal& sigma) const;
  Ordinal apply_coface(int n, int i, const Ordinal& sigma) const;
  // supp_n(sigma), ascending.
  std::vector<int> support(int n, const Ordinal& sigma) const;
  // The tau with D(f)(tau) == sigma, if any.
  std::optional<Ordinal> preimage(const Morphism& f, const Ordinal& sigma) const;

  // Closed-form or tabulated normality data, if the presentation carries it.
  bool has_normality() const;
  Ordinal mu(int n, int k) const;
  std::optional<NormalityData> normality(int bound) const;

  // Sigma-specific: SigmaD(n) and the split of alpha < SigmaD(n) into
  // (k, beta) with alpha = SigmaD(k) (beta empty) or SigmaD(k)+1+beta.
  Ordinal sigma_value(int n) const;
  std::pair<int, std::optional<Ordinal>> sigma_decompose(int n, const Ordinal& alpha) const;

  std::string describe() const;

  struct Node;

 private:
  explicit Dilator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

void check_arity(const Dilator& d, int n);

// Elements of D(n) if finite; nullopt otherwise.
std::optional<std::vector<Ordinal>> enumerate_fiber(const Dilator& d, int n);
// Throws DilatorError on an infinite fiber.
std::vector<TraceElement> enumerate_trace(const Dilator& d, int bound);
// Elements of D(n) drawn at random when the fiber is infinite (always
// including small finite elements), or all of them when finite.
std::vector<Ordinal> sample_fiber(const Dilator& d, int n, std::mt19937_64& rng, std::size_t count);

// A random ordinal strictly below x (x > 0), of bounded size.
Ordinal sample_below(const Ordinal& x, std::mt19937_64& rng);

Report validate_predilator(const Dilator& d, int bound, std::uint64_t seed = 1);
Report validate_normality(const Dilator& d, const std::optional<NormalityData>& mu, int bound);
inline Report validate_normality(const Dilator& d, int bound) { return validate_normality(d, d.normality(bound), bound); }

// Tabulates a dilator with finite fibers up to `bound` (with mu when present).
FiniteTable tabulate(const Dilator& d, int bound);

// Spec files (JSON) and the compact builtin syntax, e.g. "sigma(const(1))".
std::string to_spec(const Dilator& d);
Dilator parse_spec(std::string_view json_text);
Dilator parse_builtin(std::string_view text);
// Accepts a builtin expression, "none" (Const(0)), or a spec file path.
Dilator load_dilator(const std::string& arg);

}  // namespace patterns

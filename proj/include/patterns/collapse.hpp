#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patterns/dilator.hpp"
#include "patterns/report.hpp"
#include "patterns/resemblance.hpp"
#include "patterns/term.hpp"

namespace patterns {

enum class Provenance { constructed_normal, constructed_oracle, user_supplied };

struct CollapseEntry {
  Term gamma;
  // nullopt: no witness in the searched range.
  std::optional<ExtendedBase> theta;
};

// A partial map theta: D̄(alpha) -> alpha. Entries are kept in term order.
struct CollapseTable {
  Dilator dilator;
  ExtendedBase alpha;
  std::vector<CollapseEntry> entries;
  Provenance provenance = Provenance::user_supplied;
};

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Answers "delta <=_1 t" in the language of ΣD, t a ΣD-representation.
// Answers are memoized, so repeated queries are stable.
class ResemblanceOracle {
 public:
  virtual ~ResemblanceOracle() = default;
  bool query(const ExtendedBase& delta, const Representation& t);
  // Search range used when build_collapse gets none; ascending.
  virtual std::optional<std::vector<ExtendedBase>> default_range() const { return std::nullopt; }
  virtual std::string describe() const = 0;
  std::size_t queries() const { return memo_.size(); }

 protected:
  virtual bool answer(const ExtendedBase& delta, const Representation& t) = 0;

 private:
  std::map<std::pair<std::string, std::string>, bool> memo_;
};

// Backed by a computed <=_1 table over a normal ΣD. Fails (OracleError) when
// an infinite delta or value of t lies outside the table's universe.
class TableOracle : public ResemblanceOracle {
 public:
  TableOracle(const Dilator& d, Leq1Table table);
  std::optional<std::vector<ExtendedBase>> default_range() const override;
  std::string describe() const override { return "table"; }
  const Leq1Table& table() const { return table_; }
  // Universe elements delta < alpha for which every query build_collapse
  // would make about the truncation stays answerable.
  std::vector<ExtendedBase> answerable_range(const ExtendedBase& alpha, const std::vector<Term>& truncation) const;

 protected:
  bool answer(const ExtendedBase& delta, const Representation& t) override;

 private:
  Dilator sigma_;
  Leq1Table table_;
};

class FixtureOracle : public ResemblanceOracle {
 public:
  using Fn = std::function<bool(const ExtendedBase&, const Representation&)>;
  FixtureOracle(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  std::string describe() const override { return "fixture:" + name_; }

 protected:
  bool answer(const ExtendedBase& delta, const Representation& t) override { return fn_(delta, t); }

 private:
  std::string name_;
  Fn fn_;
};

// Stands in for the hypothesis alpha <=_1 ΣD(alpha+1): answers a constant.
class StubOracle : public ResemblanceOracle {
 public:
  explicit StubOracle(bool verdict = true) : verdict_(verdict) {}
  std::string describe() const override { return verdict_ ? "stub:true" : "stub:false"; }

 protected:
  bool answer(const ExtendedBase&, const Representation&) override { return verdict_; }

 private:
  bool verdict_;
};

// True exactly when delta is the star of t.
std::unique_ptr<ResemblanceOracle> star_fixture(const Dilator& d);

// All terms over alpha whose arguments are below n (n <= alpha), ascending.
std::vector<Term> finite_truncation(const Dilator& d, const ExtendedBase& alpha, std::uint64_t n);

// theta(gamma) = E(gamma+1) for a normal E and a limit lambda with
// E(lambda) = lambda. The fixed point is checked when E(lambda) has a closed
// form; identity passes at any limit. Throws DilatorError otherwise.
CollapseTable normal_collapse(const Dilator& e, const ExtendedBase& lambda, const std::vector<Term>& truncation);

// theta(gamma) = least delta in range, delta < alpha, with delta >= xi(gamma)*
// and delta <=_1 xi(gamma)[delta]. Without a range, the oracle's default is
// used (std::invalid_argument if it has none).
CollapseTable build_collapse(const Dilator& d, const ExtendedBase& alpha, ResemblanceOracle& oracle,
                             const std::vector<Term>& truncation,
                             std::optional<std::vector<ExtendedBase>> range = std::nullopt);

// The xi_alpha(gamma) representation in ΣD and its star.
Representation xi_repr(const Dilator& d, const ExtendedBase& alpha, const Term& gamma);

struct CollapseViolation {
  std::string condition;  // "a", "b" or "range"
  Term gamma;
  std::optional<Term> delta;
  std::string lhs, rhs;
};

struct CollapseReport {
  std::size_t entries = 0;
  std::size_t pairs = 0;
  std::size_t unresolved = 0;
  std::vector<CollapseViolation> violations;
  bool valid() const { return violations.empty(); }
  bool violates(const std::string& condition) const;
};

// Checks (a) over all ordered pairs of resolved entries and (b) plus the
// range bound over every resolved entry. Unresolved entries are counted only.
CollapseReport validate_collapse(const Dilator& d, const CollapseTable& table);
std::string render_text(const CollapseReport& r);

// Re-checks a built table: no smaller delta in range passes both tests, and
// supp(gamma) <= xi* <= theta on every resolved entry.
Report audit_build(const Dilator& d, const CollapseTable& table, ResemblanceOracle& oracle,
                   const std::vector<ExtendedBase>& range);

// "term\tordinal" lines under a header; unresolved entries read "none".
std::string render_tsv(const CollapseTable& t);
CollapseTable parse_collapse_tsv(const Dilator& d, std::string_view text);

}  // namespace patterns

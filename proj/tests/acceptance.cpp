// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "patterns/cli.hpp"
#include "patterns/collapse.hpp"
#include "patterns/resemblance.hpp"
#include "patterns/sigma.hpp"
#include "reflection.hpp"

using namespace patterns;
using fixtures::builtin;

namespace {

// Time limits, in seconds.
constexpr double kLawSuiteLimit = 10.0;
constexpr double kSegmentLimit = 60.0;
constexpr double kBatteryLimit = 60.0;
// Samples per clause of the fundamental-lemma battery.
constexpr std::size_t kBatterySamples = 1000;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Ordinal N(std::uint64_t n) { return Ordinal::nat(n); }
ExtendedBase X(const char* s) { return parse_extended(s); }

std::vector<Ordinal> ords(std::initializer_list<const char*> xs) {
  std::vector<Ordinal> out;
  for (auto x : xs) out.push_back(parse_ordinal(x));
  return out;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome c1_law_suite() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t sampled = 0;
  for (const char* e : {"identity", "const(0)", "const(1)", "const(2)", "const(w)", "sum(const(1),identity)",
                        "sigma(const(1))", "sigma(identity)"}) {
    Dilator d = builtin(e);
    Report p = validate_predilator(d, 8);
    o.require(p.passed(), std::string(e) + " fails a predilator law");
    for (const auto& l : p.laws) sampled += !l.exhaustive;
    Report n = validate_normality(d, 8);
    // Constant functors carry no mu: the validator must reject them.
    if (d.kind() == Dilator::Kind::constant)
      o.require(!n.passed() && n.find("normality-data"), std::string(e) + " not rejected for missing normality data");
    else
      o.require(n.passed(), std::string(e) + " fails normality");
  }
  Report b = validate_predilator(fixtures::broken_support_naturality(), 8);
  o.require(!b.passed() && b.find("support-naturality")->counterexample, "support-naturality mutant not located");
  Report c = validate_normality(fixtures::broken_normality(), 8);
  bool located = false;
  for (const auto& l : c.laws) located = located || (!l.passed && l.counterexample);
  o.require(located, "normality mutant not located");
  double s = since(t0);
  o.require(s < kLawSuiteLimit, "runtime over limit");
  std::ostringstream d;
  d << "8 dilators at bound 8, 2 mutants located, const(nu) rejected by normality (no mu), " << sampled
    << " laws sampled on infinite fibers";
  if (o.ok) o.detail = d.str();
  return o;
}

Outcome c2_segments() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  Dilator pure = builtin("none");
  for (std::uint64_t n = 0; n <= 12; ++n) {
    Leq1Table t = leq1_table(PatternStructure::segment(pure, n));
    Leq1Table big = leq1_table(PatternStructure::segment(pure, n + 3));
    for (std::uint64_t a = 0; a <= n; ++a)
      for (std::uint64_t b = 0; b <= n; ++b) {
        o.require(t.holds(N(a), N(b)) == (a == b), "not equality at N=" + std::to_string(n));
        o.require(big.holds(N(a), N(b)) == t.holds(N(a), N(b)), "restriction unstable at N=" + std::to_string(n));
      }
  }
  o.require(since(t0) < kSegmentLimit, "runtime over limit");
  if (o.ok) o.detail = "N = 0..12, each against N+3";
  return o;
}

Outcome c3_criterion() {
  Outcome o;
  std::vector<Ordinal> cands = ords({"0", "1", "2", "w", "w + 1", "w + 2", "w*2", "w*2 + 1", "w^2", "w^2 + 1"});
  std::size_t universes = 0;
  for (const char* e : {"identity", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    std::set<std::vector<Ordinal>> seen;
    for (std::uint64_t m = 0; m < (1ULL << cands.size()); ++m) {
      if (__builtin_popcountll(m) > 6) continue;
      std::vector<Ordinal> z;
      for (std::size_t i = 0; i < cands.size(); ++i)
        if (m >> i & 1) z.push_back(cands[i]);
      auto u = closure(d, z);
      if (u.size() > 6 || !seen.insert(u).second) continue;
      auto s = PatternStructure::relativized(d, u);
      ++universes;
      o.require(leq1_table(s).same_relation(leq1_criterion(s)), std::string(e) + ": table and criterion differ");
    }
  }
  if (o.ok) o.detail = std::to_string(universes) + " closed universes";
  return o;
}

Outcome c4_reflection() {
  Outcome o;
  reflection::Tally tally;
  std::size_t random = 0;
  std::mt19937_64 rng(4);
  for (const char* e : {"none", "identity", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    Leq1Table t = leq1_table(PatternStructure::segment(d, 8));
    std::vector<Ordinal> sigmas;
    if (d.has_normality()) sigmas = {N(0), N(1)};
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t b = a; b <= 8; ++b) {
        bool verdict = t.holds(N(a), N(b));
        o.require(reflection::reflects(t, N(a), N(b), 2, tally) == verdict,
                  std::string(e) + ": diagrams disagree at " + std::to_string(a) + ", " + std::to_string(b));
        // Random formulas may only witness failures the table also reports.
        for (int i = 0; i < 40; ++i) {
          std::vector<Ordinal> params;
          for (std::uint64_t p = 0; p < a && params.size() < 2; ++p)
            if (rng() % 2) params.push_back(N(p));
          Sigma1 phi = reflection::random_formula(rng, 1 + static_cast<int>(rng() % 2), params.size(), sigmas);
          ++random;
          if (sigma1_holds(t, phi, params, N(b)) && !sigma1_holds(t, phi, params, N(a)))
            o.require(!verdict, std::string(e) + ": random formula breaks reflection at " + std::to_string(a));
        }
      }
  }
  if (o.ok) o.detail = std::to_string(tally.formulas) + " diagram formulas, " + std::to_string(random) + " random formulas";
  return o;
}

Outcome c5_battery() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t g_total = 0, min_checked = SIZE_MAX;
  for (const char* e : {"sigma(const(1))", "sigma(identity)"}) {
    Report r = check_fund_basic(builtin(e), kBatterySamples, 7);
    for (const auto& l : r.laws) {
      o.require(l.passed, std::string(e) + " " + l.law + " has a counterexample");
      if (l.law == "fund-g") {
        g_total += l.checked;
      } else {
        min_checked = std::min(min_checked, l.checked);
        o.require(l.checked >= kBatterySamples, std::string(e) + " " + l.law + " under-sampled");
      }
    }
  }
  o.require(g_total >= kBatterySamples, "fund-g under-sampled");
  o.require(since(t0) < kBatteryLimit, "runtime over limit");
  if (o.ok)
    o.detail = "(a)-(f) >= " + std::to_string(min_checked) + " each per dilator, (g) " + std::to_string(g_total) +
               " (vacuous for sigma(const(1)))";
  return o;
}

Outcome c6_xi() {
  Outcome o;
  std::size_t terms = 0;
  for (const char* e : {"const(1)", "const(2)", "identity", "sum(const(1),identity)", "sigma(identity)"}) {
    Dilator d = builtin(e);
    Dilator s = Dilator::sigma(d);
    for (std::uint64_t a = 0; a <= 6; ++a) {
      int ai = static_cast<int>(a);
      std::set<std::uint64_t> values;
      std::size_t count = 0;
      for (const auto& t : enumerate_terms(d, N(a))) {
        Term x = xi_embed(d, ExtendedBase::nat(a), t);
        std::vector<ExtendedBase> sup = term_support(t);
        sup.push_back(ExtendedBase::nat(a));
        o.require(term_support(x) == sup, std::string(e) + ": support law fails");
        Ordinal v = repr_value(s, representation(s, x));
        std::vector<int> fsup;
        for (const auto& g : sup) fsup.push_back(static_cast<int>(g.as_plain().to_nat()));
        o.require(s.support(ai + 1, v) == fsup, std::string(e) + ": functor support disagrees");
        values.insert(v.to_nat());
        ++count;
      }
      std::set<std::uint64_t> interval;
      for (std::uint64_t v = s.value(ai).to_nat() + 1; v < s.value(ai + 1).to_nat(); ++v) interval.insert(v);
      o.require(values == interval && values.size() == count,
                std::string(e) + ": range is not the open interval at alpha=" + std::to_string(a));
      terms += count;
    }
  }
  if (o.ok) o.detail = std::to_string(terms) + " terms over 5 dilators, alpha <= 6";
  return o;
}

Outcome c7_clubs() {
  Outcome o;
  std::size_t slices = 0;
  Dilator id = builtin("identity");
  for (std::uint64_t n = 0; n <= 10; ++n) {
    Leq1Table t = leq1_table(PatternStructure::segment(id, n));
    for (std::uint64_t r = 0; r <= n; ++r) {
      Slice s = club_slice(t, e_point(id, ExtendedBase::nat(r)));
      ++slices;
      // Every delta is a fixed point of the identity.
      o.require(s.members == t.universe() && s.undetermined.empty(), "identity slice is not the fixed points");
    }
  }
  auto side_conditions = [&](const Leq1Table& t, const Representation& g) {
    const Dilator& e = t.structure().dilator;
    Slice s = club_slice(t, g);
    ++slices;
    for (const auto& m : s.members) {
      o.require(!(ExtendedBase(m) < star(e, g)), "member below gamma*");
      o.require(repr_value(e, e_point(e, ExtendedBase(m))) == m, "member is not a fixed point");
      o.require(t.holds(m, repr_value(e, substitute_last(e, g, m))), "member fails delta <=1 gamma[delta]");
    }
  };
  for (const char* e : {"sigma(const(1))", "sigma(identity)", "sum(const(1),identity)", "identity"}) {
    Dilator d = builtin(e);
    Leq1Table t = leq1_table(PatternStructure::segment(d, 10));
    for (std::uint64_t v = 0; v <= 10; ++v) {
      Representation g = repr_of_ordinal(d, N(v));
      if (g.args.empty()) continue;
      side_conditions(t, g);
    }
  }
  Dilator sc = builtin("sigma(const(1))");
  Leq1Table t = leq1_table(PatternStructure::relativized(sc, ords({"0", "1", "2", "w", "w + 1", "w*2", "w*2 + 1"})));
  for (const auto& v : t.universe()) {
    Representation g = repr_of_ordinal(sc, v);
    if (!g.args.empty()) side_conditions(t, g);
  }
  if (o.ok) o.detail = std::to_string(slices) + " slices";
  return o;
}

Outcome c8_collapse() {
  Outcome o;
  Dilator id = builtin("identity");
  CollapseTable t = normal_collapse(id, X("w"), finite_truncation(id, X("w"), 11));
  o.require(t.entries.size() == 11, "truncation is not {0..10}");
  for (std::size_t k = 0; k < t.entries.size(); ++k)
    o.require(t.entries[k].theta == ExtendedBase::nat(k + 1), "theta(gamma) != gamma+1");
  o.require(validate_collapse(id, t).valid(), "identity collapse rejected");
  CollapseTable zero = t;
  for (auto& e : zero.entries) e.theta = ExtendedBase();
  CollapseReport rz = validate_collapse(id, zero);
  o.require(rz.violates("b") && rz.violations.size() == 11, "theta = 0 not rejected under (b) at every gamma");
  CollapseTable swapped = t;
  std::swap(swapped.entries[3].theta, swapped.entries[5].theta);
  CollapseReport rs = validate_collapse(id, swapped);
  bool named = false;
  for (const auto& v : rs.violations)
    named = named || (v.condition == "a" && v.gamma == swapped.entries[3].gamma && v.delta == swapped.entries[5].gamma);
  o.require(named, "swap not rejected under (a) at the swapped pair");
  if (o.ok) o.detail = "valid; theta=0 fails (b) x11; swap(3,5) fails (a)";
  return o;
}

Outcome c9_build() {
  Outcome o;
  std::size_t tables = 0, entries = 0, resolved = 0;
  auto audit = [&](const Dilator& d, const CollapseTable& t, ResemblanceOracle& oracle, const std::vector<ExtendedBase>& range,
                   bool genuine) {
    ++tables;
    Report r = audit_build(d, t, oracle, range);
    o.require(r.passed(), d.describe() + ": " + render_text(r));
    CollapseReport v = validate_collapse(d, t);
    o.require(!v.violates("b") && !v.violates("range"), d.describe() + ": (b) fails on a built table");
    if (genuine) o.require(v.valid(), d.describe() + ": (a) fails on a table-backed build");
    for (const auto& e : t.entries) {
      ++entries;
      resolved += e.theta.has_value();
    }
  };
  // Table-backed oracles over relativized windows of ΣConst(c).
  std::vector<Ordinal> pool = ords({"1", "2", "w", "w + 1", "w + 2", "w + 3", "w + 4", "w + 5", "w + 7", "w*2", "w*2 + 1"});
  for (const char* dn : {"const(1)", "const(2)"}) {
    Dilator d = builtin(dn);
    Dilator s = Dilator::sigma(d);
    for (unsigned m = 0; m < (1u << pool.size()); ++m) {
      if (__builtin_popcount(m) > 4) continue;
      std::vector<Ordinal> u{Ordinal()};
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (m >> i & 1) u.push_back(pool[i]);
      TableOracle oracle(d, leq1_table(PatternStructure::relativized(s, u)));
      for (const char* a : {"w*2", "w^2"}) {
        auto trunc = finite_truncation(d, X(a), 0);
        auto range = oracle.answerable_range(X(a), trunc);
        audit(d, build_collapse(d, X(a), oracle, trunc, range), oracle, range, true);
      }
    }
  }
  // Fixtures and stubs over dilators with arguments.
  std::vector<ExtendedBase> range;
  for (std::uint64_t k = 0; k < 8; ++k) range.push_back(ExtendedBase::nat(k));
  for (const char* r : {"w", "w + 1", "w + 2", "w + 4", "w*2"}) range.push_back(X(r));
  for (const char* dn : {"identity", "const(2)", "sum(const(1),identity)", "sigma(identity)", "sum(identity,identity)"}) {
    Dilator d = builtin(dn);
    for (const char* a : {"5", "w", "w + 3", "w*2 + 1"}) {
      auto trunc = finite_truncation(d, X(a), 5);
      auto fixture = star_fixture(d);
      audit(d, build_collapse(d, X(a), *fixture, trunc, range), *fixture, range, false);
      StubOracle yes(true);
      audit(d, build_collapse(d, X(a), yes, trunc, range), yes, range, false);
    }
  }
  if (o.ok)
    o.detail = std::to_string(tables) + " tables, " + std::to_string(entries) + " entries (" + std::to_string(resolved) +
               " resolved)";
  return o;
}

Outcome c10_serialization() {
  Outcome o;
  std::size_t items = 0;
  for (const char* e : {"identity", "const(0)", "const(w^2 + 3)", "sum(const(1),identity)", "sigma(sigma(identity))"}) {
    std::string s = to_spec(builtin(e));
    o.require(to_spec(parse_spec(s)) == s, std::string("spec round trip: ") + e);
    ++items;
  }
  for (const Dilator& d : {fixtures::broken_support_naturality(), fixtures::broken_normality(), fixtures::reversed_identity()}) {
    std::string s = to_spec(d);
    o.require(to_spec(parse_spec(s)) == s, "table spec round trip");
    ++items;
  }
  for (const char* e : {"identity", "sigma(identity)", "sum(const(2),identity)"}) {
    Dilator d = builtin(e);
    for (const char* a : {"4", "w + 1", "W+2"})
      for (const auto& t : finite_truncation(d, X(a), 4)) {
        o.require(render(parse_term(render(t))) == render(t), "term round trip");
        Representation r = representation(d, t);
        o.require(render(parse_representation(render(r))) == render(r), "representation round trip");
        items += 2;
      }
  }
  Dilator id = builtin("identity");
  CollapseTable c = normal_collapse(id, X("w^2"), finite_truncation(id, X("w^2"), 9));
  std::string tsv = render_tsv(c);
  o.require(render_tsv(parse_collapse_tsv(id, tsv)) == tsv, "collapse TSV round trip");
  ++items;
  std::vector<std::vector<std::string>> cmds = {
      {"validate", "sum(const(1),identity)", "--seed", "9"},
      {"fundlemma", "--dilator", "sigma(identity)", "--samples", "100", "--seed", "3"},
      {"leq1", "--dilator", "sigma(const(1))", "--universe", "0..4,w,w + 1,w*2", "--format", "tsv"},
      {"leq1", "--dilator", "none", "--universe", "0,1,2,w,w + 1", "--format", "dot"},
      {"club", "--dilator", "sigma(const(1))", "--universe", "0..4,w,w + 1,w*2", "--gamma", "0"},
      {"collapse", "build", "--dilator", "identity", "--alpha", "w", "--truncation", "11"},
  };
  for (const auto& cmd : cmds) {
    std::ostringstream a, b, ea, eb;
    int ca = run_cli(cmd, a, ea), cb = run_cli(cmd, b, eb);
    o.require(ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty(), "CLI rerun differs: " + cmd[0]);
    ++items;
  }
  if (o.ok) o.detail = std::to_string(items) + " round trips and reruns";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all = {
      {"dilator law suite", c1_law_suite},
      {"finite-pattern exactness", c2_segments},
      {"criterion equivalence", c3_criterion},
      {"Sigma_1 reflection", c4_reflection},
      {"fundamental-lemma battery", c5_battery},
      {"xi range and support laws", c6_xi},
      {"clubs basis", c7_clubs},
      {"collapse round trip", c8_collapse},
      {"build_collapse contract", c9_build},
      {"serialization and determinism", c10_serialization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.ok;
    std::printf("%-4s criterion %2zu  %-30s %6.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, all[i].name, since(t0),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, all.size());
  return failed == 0 ? 0 : 1;
}

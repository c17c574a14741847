#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "reflection.hpp"
#include "patterns/resemblance.hpp"
#include "patterns/sigma.hpp"

using namespace patterns;
using fixtures::builtin;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }
Ordinal N(std::uint64_t n) { return Ordinal::nat(n); }

std::vector<Ordinal> ords(std::initializer_list<const char*> xs) {
  std::vector<Ordinal> out;
  for (auto x : xs) out.push_back(O(x));
  return out;
}

void check_invariants(const Leq1Table& t) {
  const auto& u = t.universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(t.holds(u[i], u[i]));
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (t.holds(u[i], u[j])) CHECK(!(u[j] < u[i]));
      for (std::size_t k = 0; k < u.size(); ++k)
        if (t.holds(u[i], u[j]) && t.holds(u[j], u[k])) CHECK(t.holds(u[i], u[k]));
    }
  }
}

// Subsets of `cands` of size <= k.
std::vector<std::vector<Ordinal>> subsets(const std::vector<Ordinal>& cands, std::size_t k) {
  std::vector<std::vector<Ordinal>> out;
  for (std::uint64_t m = 0; m < (1ULL << cands.size()); ++m) {
    if (static_cast<std::size_t>(__builtin_popcountll(m)) > k) continue;
    std::vector<Ordinal> s;
    for (std::size_t i = 0; i < cands.size(); ++i)
      if (m >> i & 1) s.push_back(cands[i]);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("pure segments: equality, restriction-stable") {
  Dilator pure = builtin("none");
  for (std::uint64_t n = 0; n <= 12; ++n) {
    Leq1Table t = leq1_table(PatternStructure::segment(pure, n));
    Leq1Table big = leq1_table(PatternStructure::segment(pure, n + 3));
    for (std::uint64_t a = 0; a <= n; ++a)
      for (std::uint64_t b = 0; b <= n; ++b) {
        CHECK(t.holds(N(a), N(b)) == (a == b));
        CHECK(big.holds(N(a), N(b)) == t.holds(N(a), N(b)));
      }
    check_invariants(t);
  }
  CHECK_THROWS_AS(leq1_table(PatternStructure{pure, ords({"0", "2"}), Semantics::exact}), DilatorError);
}

TEST_CASE("relativized example: omega <=1 omega+1 but not omega+2") {
  Dilator pure = builtin("none");
  Leq1Table t = leq1_table(PatternStructure::relativized(pure, ords({"0", "1", "2", "w", "w + 1"})));
  CHECK(t.holds(O("w"), O("w + 1")));
  Leq1Table t2 = leq1_table(PatternStructure::relativized(pure, ords({"0", "1", "2", "w", "w + 1", "w + 2"})));
  CHECK(t2.holds(O("w"), O("w + 1")));
  CHECK(!t2.holds(O("w"), O("w + 2")));
  // Nothing finite sits above w, so w+1 cannot reflect into w+2.
  CHECK(!t2.holds(O("w + 1"), O("w + 2")));
  check_invariants(t2);
  CHECK_THROWS_AS(leq1_table(PatternStructure::relativized(builtin("const(1)"), ords({"0"}))), DilatorError);
}

TEST_CASE("maximal-pair table agrees with brute force over all (X, Y)") {
  std::vector<Ordinal> cands = ords({"0", "1", "w", "w + 1", "w*2", "w*2 + 1", "w^2"});
  for (const char* e : {"none", "identity", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    CAPTURE(e);
    for (const auto& z : subsets(cands, 4)) {
      auto s = PatternStructure::relativized(d, d.has_normality() ? closure(d, z) : z);
      if (s.universe.size() > 5) continue;
      for (bool fwd : {false, true}) {
        Leq1Table t = fwd ? leq1_criterion(s) : leq1_table(s);
        for (const auto& a : t.universe())
          for (const auto& b : t.universe()) CHECK(t.holds(a, b) == leq1_bruteforce(t, a, b));
      }
    }
  }
}

TEST_CASE("exact segments agree with brute force over all (X, Y)") {
  for (const char* e : {"none", "identity", "sigma(const(1))", "sigma(identity)"}) {
    CAPTURE(e);
    for (std::uint64_t n = 0; n <= 6; ++n) {
      Leq1Table t = leq1_table(PatternStructure::segment(builtin(e), n));
      for (const auto& a : t.universe())
        for (const auto& b : t.universe()) CHECK(t.holds(a, b) == leq1_bruteforce(t, a, b));
    }
  }
}

TEST_CASE("table equals criterion on closed universes of size <= 6") {
  std::vector<Ordinal> cands = ords({"0", "1", "2", "w", "w + 1", "w + 2", "w*2", "w*2 + 1", "w^2", "w^2 + 1"});
  std::size_t nontrivial = 0, universes = 0;
  for (const char* e : {"identity", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    std::set<std::vector<Ordinal>> seen;
    for (const auto& z : subsets(cands, 6)) {
      auto u = closure(d, z);
      if (u.size() > 6 || !seen.insert(u).second) continue;
      CHECK(closure(d, u) == u);
      auto s = PatternStructure::relativized(d, u);
      Leq1Table a = leq1_table(s), b = leq1_criterion(s);
      CHECK(a.same_relation(b));
      ++universes;
      for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
          if (a.holds_at(i, j)) {
            ++nontrivial;
            i = j = u.size();
          }
    }
  }
  MESSAGE("closed universes: " << universes << ", with a proper <=1 pair: " << nontrivial);
  CHECK(nontrivial > 0);
}

TEST_CASE("criterion can be strictly weaker on universes that are not closed") {
  // sigma(const(1)): w+1 ~ (1; w). Without w in the universe, the forward-only
  // transfer never sees the atom, and the two relations may differ; they must
  // still be nested.
  Dilator d = builtin("sigma(const(1))");
  std::vector<Ordinal> cands = ords({"0", "1", "w + 1", "w*2 + 1", "w^2 + 1", "w^2 + 3"});
  for (const auto& z : subsets(cands, 5)) {
    auto s = PatternStructure::relativized(d, z);
    Leq1Table a = leq1_table(s), b = leq1_criterion(s);
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = 0; j < z.size(); ++j)
        if (a.holds_at(i, j)) CHECK(b.holds_at(i, j));
  }
}

TEST_CASE("uniqueness of representations inside a structure") {
  for (const char* e : {"identity", "sigma(const(1))", "sigma(identity)"}) {
    Dilator d = builtin(e);
    Leq1Table t = leq1_table(PatternStructure::segment(d, 12));
    std::set<std::string> seen;
    for (const auto& x : t.universe()) CHECK(seen.insert(render(*t.repr(x))).second);
  }
}

TEST_CASE("Sigma_1 satisfaction") {
  Dilator pure = builtin("none");
  Leq1Table t = leq1_table(PatternStructure::segment(pure, 4));
  Sigma1 refl;
  refl.vars = 1;
  refl.matrix.op = Sigma1Node::Op::le;
  refl.matrix.terms = {{false, 0}, {false, 0}};
  CHECK(sigma1_holds(t, refl, {}));
  CHECK(render(refl) == "exists y0. y0 <= y0");
  CHECK(!sigma1_holds(t, refl, {}, N(0)));
  Sigma1 bad = refl;
  bad.matrix.terms = {{false, 0}, {false, 3}};
  CHECK_THROWS_AS(sigma1_holds(t, bad, {}), std::invalid_argument);
  // The diagram of all of alpha with one fresh witness separates alpha < beta.
  std::vector<Ordinal> params = {N(0), N(1)};
  Sigma1 phi = diagram_formula(t, params, {N(2)});
  CHECK(sigma1_holds(t, phi, params, N(3)));
  CHECK(!sigma1_holds(t, phi, params, N(2)));
}

TEST_CASE("Sigma_1 formulas persist upwards (200 random pairs)") {
  std::mt19937_64 rng(77);
  using Op = Sigma1Node::Op;
  for (int trial = 0; trial < 200; ++trial) {
    Dilator d = builtin(trial % 2 ? "sigma(const(1))" : "none");
    std::uint64_t n = 3 + rng() % 6;
    Leq1Table t = leq1_table(PatternStructure::segment(d, n));
    Ordinal small = N(1 + rng() % n), large = N(n + 1);
    std::vector<Ordinal> params{N(rng() % small.to_nat())};
    Sigma1 phi;
    phi.vars = 1 + static_cast<int>(rng() % 2);
    std::function<Sigma1Node(int)> gen = [&](int depth) {
      Sigma1Node node;
      auto var = [&]() { return rng() % 3 ? Sigma1Var{false, static_cast<int>(rng() % static_cast<std::uint64_t>(phi.vars))} : Sigma1Var{true, 0}; };
      std::uint64_t pick = depth > 2 ? rng() % 3 : rng() % 6;
      switch (pick) {
        case 0: node.op = Op::le; node.terms = {var(), var()}; break;
        case 1: node.op = Op::leq1; node.terms = {var(), var()}; break;
        case 2:
          node.op = Op::repr;
          node.sigma = N(rng() % 2);
          node.terms = {var(), var()};
          break;
        case 3: node.op = Op::neg; node.kids = {gen(depth + 1)}; break;
        default:
          node.op = pick == 4 ? Op::conj : Op::disj;
          node.kids = {gen(depth + 1), gen(depth + 1)};
      }
      return node;
    };
    phi.matrix = gen(0);
    if (sigma1_holds(t, phi, params, small)) CHECK(sigma1_holds(t, phi, params, large));
  }
}

TEST_CASE("closures") {
  Dilator id = builtin("identity"), sc = builtin("sigma(const(1))"), si = builtin("sigma(identity)");
  CHECK(closure(sc, {}).empty());
  for (const char* g : {"0", "5", "w", "w^2 + 3"}) CHECK(cl(id, O(g)) == std::vector<Ordinal>{O(g)});
  CHECK(cl(sc, O("w*2 + 3")) == ords({"w*2", "w*2 + 1", "w*2 + 3"}));
  CHECK(cl(sc, O("w")) == ords({"w"}));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    std::vector<Ordinal> z, zf;
    for (int k = 0; k < 4; ++k) {
      z.push_back(sample_below(O("w^3"), rng));
      zf.push_back(N(rng() % 40));
    }
    auto c = closure(sc, z);
    CHECK(closure(sc, c) == c);
    for (const auto& g : z)
      for (const auto& x : cl(sc, g)) CHECK(!(g < x));
    auto cf = closure(si, zf);
    CHECK(closure(si, cf) == cf);
  }
}

TEST_CASE("club slices: basis law and side conditions") {
  for (std::uint64_t n : {4u, 9u}) {
    Dilator id = builtin("identity");
    Leq1Table t = leq1_table(PatternStructure::segment(id, n));
    for (std::uint64_t r = 0; r <= n; ++r) {
      Slice s = club_slice(t, e_point(id, ExtendedBase::nat(r)));
      CHECK(s.members == t.universe());
      CHECK(s.undetermined.empty());
    }
  }
  for (const char* e : {"sigma(const(1))", "sigma(identity)", "sum(const(1),identity)"}) {
    Dilator d = builtin(e);
    CAPTURE(e);
    Leq1Table t = leq1_table(PatternStructure::segment(d, 10));
    for (std::uint64_t v = 0; v <= 10; ++v) {
      if (v < repr_value(d, e_point(d, ExtendedBase::nat(0))).to_nat()) continue;
      Representation g = repr_of_ordinal(d, N(v));
      Slice s = club_slice(t, g);
      for (const auto& m : s.members) {
        CHECK(!(ExtendedBase(m) < star(d, g)));
        CHECK(repr_value(d, e_point(d, ExtendedBase(m))) == m);
      }
    }
    // delta <=1 E(delta) iff E(delta) = delta.
    for (std::uint64_t x = 0; x <= 10; ++x) {
      Ordinal ed = repr_value(d, e_point(d, ExtendedBase::nat(x)));
      if (ed.to_nat() <= 10) CHECK(t.holds(N(x), ed) == (ed == N(x)));
    }
  }
  // Closed relativized universes.
  Dilator sc = builtin("sigma(const(1))");
  Leq1Table t = leq1_table(PatternStructure::relativized(sc, ords({"0", "1", "2", "w", "w + 1", "w*2", "w*2 + 1"})));
  for (const char* r : {"0", "1", "w", "w*2"}) {
    Slice s = club_slice(t, e_point(sc, parse_extended(r)));
    for (const auto& m : s.members) CHECK(repr_value(sc, e_point(sc, ExtendedBase(m))) == m);
  }
}

TEST_CASE("fd slices") {
  Dilator sc = builtin("sigma(const(1))");
  Leq1Table t = leq1_table(PatternStructure::relativized(sc, ords({"0", "1", "2", "3", "w", "w + 1", "w*2", "w*2 + 1"})));
  // Nothing lies below E(W) in the window, so the index set is empty.
  FdSlice empty = fd_slice(t, e_point(sc, parse_extended("w")), O("w"), O("w"));
  CHECK(empty.index.empty());
  CHECK(empty.slice.members == t.universe());

  Dilator si = builtin("sigma(identity)");
  Leq1Table u = leq1_table(PatternStructure::segment(si, 12));
  Representation gamma = repr_of_ordinal(si, N(12));
  std::vector<Ordinal> prev;
  for (std::uint64_t eta = 0; eta <= 4; ++eta) {
    FdSlice f = fd_slice(u, gamma, N(eta), N(4));
    // Direct intersection oracle.
    std::vector<Ordinal> direct;
    for (const auto& x : u.universe()) {
      bool in = true;
      for (const auto& b : f.index) {
        CHECK(repr_compare(si, b, gamma) < 0);
        CHECK(!(ExtendedBase(N(eta)) < star(si, b)));
        auto m = club_slice(u, b).members;
        if (std::find(m.begin(), m.end(), x) == m.end()) in = false;
      }
      if (in) direct.push_back(x);
    }
    CHECK(f.slice.members == direct);
    if (eta > 0)
      for (const auto& x : f.slice.members) CHECK(std::find(prev.begin(), prev.end(), x) != prev.end());
    prev = f.slice.members;
  }
}

TEST_CASE("symbolic-Omega order agrees with terms over Omega+1") {
  std::mt19937_64 rng(55);
  ExtendedBase top = parse_extended("W+1");
  for (const char* e : {"identity", "sigma(const(1))", "sigma(identity)", "sigma(sigma(const(1)))"}) {
    Dilator d = builtin(e);
    auto trace = enumerate_trace(d, 3);
    auto draw = [&]() -> std::optional<DDElement> {
      const auto& te = trace[rng() % trace.size()];
      if (te.arity == 0) return std::nullopt;
      std::set<Ordinal> args;
      for (int g = 0; static_cast<int>(args.size()) < te.arity - 1 && g < 40; ++g)
        args.insert(rng() % 2 ? N(rng() % 5) : sample_below(O("w^2"), rng));
      if (static_cast<int>(args.size()) < te.arity - 1) return std::nullopt;
      return DDElement{te.sigma, {args.begin(), args.end()}};
    };
    for (int i = 0; i < 500; ++i) {
      auto a = draw(), b = draw();
      if (!a || !b) continue;
      auto as_term = [&](const DDElement& r) {
        Term t{r.sigma, {}, top};
        for (const auto& x : r.args) t.args.emplace_back(x);
        t.args.push_back(parse_extended("W"));
        return t;
      };
      CHECK(dd_compare(d, *a, *b) == term_compare(d, as_term(*a), as_term(*b)));
    }
  }
  Dilator si = builtin("sigma(identity)");
  DDElement r{N(2), {N(3)}};
  CHECK(dd_plus(r) == N(4));
  DDElement r2{N(2), {}};
  CHECK_THROWS_AS(check_dd(si, r2), DilatorError);
  CHECK_THROWS_AS(check_dd(si, DDElement{N(1), {N(3)}}), DilatorError);
  // rho+ of <s; 3, 7> is 8: in DD(8), not DD(7).
  Dilator ss = builtin("sigma(sigma(identity))");
  auto tr = enumerate_trace(ss, 3);
  auto three = std::find_if(tr.begin(), tr.end(), [](const TraceElement& te) { return te.arity == 3; });
  REQUIRE(three != tr.end());
  DDElement r3{three->sigma, {N(3), N(7)}};
  CHECK(dd_plus(r3) == N(8));
  auto in8 = dd_members(ss, N(8), 2, {N(3), N(7)});
  auto in7 = dd_members(ss, N(7), 2, {N(3), N(7)});
  CHECK(std::find(in8.begin(), in8.end(), r3) != in8.end());
  CHECK(std::find(in7.begin(), in7.end(), r3) == in7.end());
  for (std::size_t i = 1; i < in8.size(); ++i) CHECK(dd_compare(ss, in8[i - 1], in8[i]) < 0);
}

TEST_CASE("table output") {
  Leq1Table t = leq1_table(PatternStructure::relativized(builtin("none"), ords({"0", "w", "w + 1"})));
  CHECK(render_tsv(t) ==
        "alpha\tbeta\tleq1\n0\t0\ttrue\n0\tw\tfalse\nw\tw\ttrue\n0\tw + 1\tfalse\nw\tw + 1\ttrue\nw + 1\tw + 1\ttrue\n");
  CHECK(render_dot(t) == "digraph leq1 {\n  rankdir=LR;\n  \"0\";\n  \"w\";\n  \"w + 1\";\n  \"w\" -> \"w + 1\";\n}\n");
}

TEST_CASE("Sigma_1 reflection matches the table on segments {0..8}") {
  for (const char* e : {"none", "identity", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    CAPTURE(e);
    Leq1Table t = leq1_table(PatternStructure::segment(d, 8));
    reflection::Tally tally;
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t b = a; b <= 8; ++b) CHECK(reflection::reflects(t, N(a), N(b), 2, tally) == t.holds(N(a), N(b)));
    CHECK(tally.formulas > 0);
  }
}

TEST_CASE("relativized verdicts under universe growth (recorded, not asserted)") {
  std::vector<Ordinal> pool = ords({"0", "1", "2", "w", "w + 1", "w + 2", "w*2", "w*2 + 1", "w^2"});
  std::mt19937_64 rng(13);
  std::size_t pairs = 0, changed = 0;
  for (const char* e : {"none", "sigma(const(1))"}) {
    Dilator d = builtin(e);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<Ordinal> small, large;
      for (const auto& x : pool) {
        auto r = rng() % 3;
        if (r == 0) small.push_back(x);
        if (r <= 1) large.push_back(x);
      }
      if (d.has_normality()) large = closure(d, large);
      Leq1Table a = leq1_table(PatternStructure::relativized(d, small));
      Leq1Table b = leq1_table(PatternStructure::relativized(d, large));
      for (const auto& x : small)
        for (const auto& y : small) {
          if (!b.index_of(x) || !b.index_of(y) || !(x < y)) continue;
          ++pairs;
          changed += a.holds(x, y) != b.holds(x, y);
        }
    }
  }
  MESSAGE("pairs compared: " << pairs << ", verdicts changed by growth: " << changed);
  CHECK(pairs > 0);
}

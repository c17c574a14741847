#include "patterns/resemblance.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace patterns {

namespace {

bool trace_empty(const Dilator& d) {
  int top = 8;
  if (auto b = d.bound()) top = std::min(top, *b);
  for (int n = 0; n <= top; ++n)
    if (!d.value(n).is_zero()) return false;
  return true;
}

void check_universe(const PatternStructure& s, std::size_t cap) {
  const auto& u = s.universe;
  if (u.size() > cap) throw DilatorError("universe has " + std::to_string(u.size()) + " elements, cap is " + std::to_string(cap));
  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i - 1] < u[i])) throw DilatorError("universe must be strictly ascending");
  if (s.semantics == Semantics::exact)
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != Ordinal::nat(i)) throw DilatorError("exact semantics needs an initial segment {0, ..., N}");
}

std::optional<std::uint64_t> max_finite(const std::vector<Ordinal>& u) {
  std::optional<std::uint64_t> m;
  for (const auto& x : u)
    if (x.is_finite()) m = x.to_nat();
  return m;
}

// Finite witnesses beyond the universe run up to this value.
std::uint64_t pad_limit(const std::vector<Ordinal>& u, std::size_t y_size, const Leq1Options& opt) {
  return max_finite(u).value_or(0) + opt.padding_per_element * (y_size + 1);
}

using Map = std::vector<std::pair<Ordinal, Ordinal>>;  // z |-> f(z), z ascending

const Ordinal* lookup(const Map& f, const Ordinal& z) {
  for (const auto& [a, b] : f)
    if (a == z) return &b;
  return nullptr;
}
const Ordinal* lookup_inverse(const Map& f, const Ordinal& w) {
  for (const auto& [a, b] : f)
    if (b == w) return &a;
  return nullptr;
}

// Representation atoms with head z (resp. f(z)) whose arguments all lie in
// the domain (resp. range) so far; both sides must agree.
bool repr_ok(const Leq1Table& t, const Map& f, const Ordinal& z, bool forward_only) {
  const auto& rz = t.repr(z);
  const Ordinal& fz = *lookup(f, z);
  const auto& rf = t.repr(fz);
  if (!rz || !rf) return true;
  std::vector<ExtendedBase> mapped;
  bool inside = true;
  for (const auto& a : rz->args) {
    const Ordinal* m = a.is_plain() ? lookup(f, a.as_plain()) : nullptr;
    if (!m) {
      inside = false;
      break;
    }
    mapped.emplace_back(*m);
  }
  if (inside && !(rf->sigma == rz->sigma && rf->args == mapped)) return false;
  if (forward_only) return true;
  std::vector<ExtendedBase> back;
  for (const auto& a : rf->args) {
    const Ordinal* m = a.is_plain() ? lookup_inverse(f, a.as_plain()) : nullptr;
    if (!m) return true;
    back.emplace_back(*m);
  }
  return rz->sigma == rf->sigma && rz->args == back;
}

// Extends f on X by Y -> candidates (order preserving), checking <=_1 and
// representation atoms incrementally.
bool find_witness(const Leq1Table& t, Map& f, const std::vector<Ordinal>& x, const std::vector<Ordinal>& y,
                  const std::vector<Ordinal>& cand, std::size_t k, std::size_t start, bool forward_only) {
  if (k == y.size()) return true;
  if (cand.size() - start < y.size() - k) return false;
  for (std::size_t c = start; c + (y.size() - k) <= cand.size(); ++c) {
    const Ordinal& img = cand[c];
    bool ok = true;
    for (const auto& a : x)
      if (t.holds(a, y[k]) != t.holds(a, img)) {
        ok = false;
        break;
      }
    for (std::size_t m = 0; ok && m < k; ++m)
      if (t.holds(y[m], y[k]) != t.holds(f[x.size() + m].second, img)) ok = false;
    if (!ok) continue;
    f.emplace_back(y[k], img);
    if (repr_ok(t, f, y[k], forward_only) && find_witness(t, f, x, y, cand, k + 1, c + 1, forward_only)) return true;
    f.pop_back();
  }
  return false;
}

}  // namespace

PatternStructure PatternStructure::segment(const Dilator& d, std::uint64_t n) {
  PatternStructure s{d, {}, Semantics::exact};
  for (std::uint64_t i = 0; i <= n; ++i) s.universe.push_back(Ordinal::nat(i));
  return s;
}

PatternStructure PatternStructure::relativized(const Dilator& d, std::vector<Ordinal> universe) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  return PatternStructure{d, std::move(universe), Semantics::relativized};
}

Leq1Table::Leq1Table(PatternStructure s, bool forward_only)
    : s_(std::move(s)), forward_only_(forward_only), has_repr_(s_.dilator.has_normality()) {
  if (!has_repr_ && !trace_empty(s_.dilator))
    throw DilatorError("resemblance needs a normal or trace-empty dilator, got " + s_.dilator.describe());
  verdict_.assign(s_.universe.size(), std::vector<bool>(s_.universe.size(), false));
}

const std::optional<Representation>& Leq1Table::repr(const Ordinal& x) const {
  static const std::optional<Representation> none;
  if (!has_repr_) return none;
  auto it = reprs_.find(x);
  if (it == reprs_.end()) it = reprs_.emplace(x, repr_of_ordinal(s_.dilator, x)).first;
  return it->second;
}

std::optional<std::size_t> Leq1Table::index_of(const Ordinal& x) const {
  auto it = std::lower_bound(s_.universe.begin(), s_.universe.end(), x);
  if (it == s_.universe.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - s_.universe.begin());
}

bool Leq1Table::holds(const Ordinal& a, const Ordinal& b) const {
  if (b < a) return false;
  if (a == b) return true;
  auto i = index_of(a), j = index_of(b);
  if (i && j) return verdict_[*i][*j];
  // A finite alpha below beta never reflects: X = alpha leaves no room.
  if (a.is_finite()) return false;
  throw DilatorError("<=_1 undetermined outside the universe: " + render(a) + ", " + render(b));
}

bool Leq1Table::same_relation(const Leq1Table& other) const {
  return s_.universe == other.s_.universe && verdict_ == other.verdict_;
}

Leq1Table build_leq1(const PatternStructure& s, bool forward_only, const Leq1Options& opt) {
  check_universe(s, opt.max_universe);
  Leq1Table t(s, forward_only);
  const auto& u = t.universe();
  for (const auto& x : u) (void)t.repr(x);
  for (std::size_t j = 0; j < u.size(); ++j) {
    t.verdict_[j][j] = true;
    for (std::size_t i = 0; i < j; ++i) {
      if (u[i].is_finite() && s.semantics == Semantics::relativized) continue;
      // Downward closure in (X, Y): the maximal pair decides. Exact
      // structures draw witnesses from the universe alone, and X = U ∩ alpha
      // leaves none there.
      std::vector<Ordinal> x(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<Ordinal> y(u.begin() + static_cast<std::ptrdiff_t>(i), u.begin() + static_cast<std::ptrdiff_t>(j));
      std::vector<Ordinal> cand;
      bool room = x.empty() || x.back().is_finite();
      if (room && s.semantics == Semantics::relativized) {
        std::uint64_t lo = x.empty() ? 0 : x.back().to_nat() + 1;
        for (std::uint64_t k = lo; k <= pad_limit(u, y.size(), opt); ++k) cand.push_back(Ordinal::nat(k));
      }
      Map f;
      for (const auto& a : x) f.emplace_back(a, a);
      t.verdict_[i][j] = find_witness(t, f, x, y, cand, 0, 0, forward_only);
    }
  }
  return t;
}

Leq1Table leq1_table(const PatternStructure& s, const Leq1Options& opt) { return build_leq1(s, false, opt); }
Leq1Table leq1_criterion(const PatternStructure& s, const Leq1Options& opt) { return build_leq1(s, true, opt); }

bool leq1_bruteforce(const Leq1Table& t, const Ordinal& alpha, const Ordinal& beta) {
  if (beta < alpha) return false;
  if (alpha == beta) return true;
  bool exact = t.structure().semantics == Semantics::exact;
  if (alpha.is_finite() && !exact) return false;
  const auto& u = t.universe();
  std::vector<Ordinal> below, mid;
  for (const auto& v : u) {
    if (v < alpha) below.push_back(v);
    else if (v < beta) mid.push_back(v);
  }
  std::uint64_t pad = pad_limit(u, mid.size(), Leq1Options{});
  std::set<Ordinal> pool_set(below.begin(), below.end());
  if (!exact)
    for (std::uint64_t k = 0; k <= pad; ++k) pool_set.insert(Ordinal::nat(k));
  std::vector<Ordinal> pool(pool_set.begin(), pool_set.end());

  auto iso = [&](const std::vector<Ordinal>& x, const std::vector<Ordinal>& y, const std::vector<Ordinal>& w) {
    Map f;
    for (const auto& a : x) f.emplace_back(a, a);
    for (std::size_t k = 0; k < y.size(); ++k) f.emplace_back(y[k], w[k]);
    std::sort(f.begin(), f.end());
    for (std::size_t a = 0; a < f.size(); ++a)
      for (std::size_t b = 0; b < f.size(); ++b) {
        if ((f[a].first < f[b].first) != (f[a].second < f[b].second)) return false;
        if (t.holds(f[a].first, f[b].first) != t.holds(f[a].second, f[b].second)) return false;
      }
    for (const auto& [z, fz] : f)
      if (!repr_ok(t, f, z, t.forward_only())) return false;
    return true;
  };

  for (std::uint64_t xm = 0; xm < (1ULL << below.size()); ++xm) {
    std::vector<Ordinal> x;
    for (std::size_t i = 0; i < below.size(); ++i)
      if (xm >> i & 1) x.push_back(below[i]);
    for (std::uint64_t ym = 1; ym < (1ULL << mid.size()); ++ym) {
      std::vector<Ordinal> y;
      for (std::size_t i = 0; i < mid.size(); ++i)
        if (ym >> i & 1) y.push_back(mid[i]);
      std::vector<Ordinal> avail;
      for (const auto& p : pool)
        if (std::find(x.begin(), x.end(), p) == x.end()) avail.push_back(p);
      bool found = false;
      std::vector<std::size_t> pick;
      std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (found) return;
        if (pick.size() == y.size()) {
          std::vector<Ordinal> w;
          for (auto p : pick) w.push_back(avail[p]);
          found = iso(x, y, w);
          return;
        }
        for (std::size_t p = from; p < avail.size() && !found; ++p) {
          pick.push_back(p);
          rec(p + 1);
          pick.pop_back();
        }
      };
      rec(0);
      if (!found) return false;
    }
  }
  return true;
}

std::string render_tsv(const Leq1Table& t) {
  std::ostringstream out;
  out << "alpha\tbeta\tleq1\n";
  const auto& u = t.universe();
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i)
      out << render(u[i]) << '\t' << render(u[j]) << '\t' << (t.holds_at(i, j) ? "true" : "false") << '\n';
  return out.str();
}

std::string render_dot(const Leq1Table& t) {
  std::ostringstream out;
  out << "digraph leq1 {\n  rankdir=LR;\n";
  const auto& u = t.universe();
  for (const auto& x : u) out << "  \"" << render(x) << "\";\n";
  for (std::size_t j = 0; j < u.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (t.holds_at(i, j)) out << "  \"" << render(u[i]) << "\" -> \"" << render(u[j]) << "\";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Sigma_1 formulas.

namespace {

std::string var_name(const Sigma1Var& v) { return (v.param ? "p" : "y") + std::to_string(v.index); }

std::string render_node(const Sigma1Node& n) {
  using Op = Sigma1Node::Op;
  switch (n.op) {
    case Op::truth: return "true";
    case Op::le: return var_name(n.terms[0]) + " <= " + var_name(n.terms[1]);
    case Op::leq1: return var_name(n.terms[0]) + " <=1 " + var_name(n.terms[1]);
    case Op::repr: {
      std::string s = var_name(n.terms[0]) + " ~ (" + render(n.sigma) + " ;";
      for (std::size_t i = 1; i < n.terms.size(); ++i) s += (i > 1 ? ", " : " ") + var_name(n.terms[i]);
      return s + ")";
    }
    case Op::neg: return "!" + render_node(n.kids[0]);
    case Op::conj:
    case Op::disj: {
      if (n.kids.empty()) return n.op == Op::conj ? "true" : "false";
      std::string s = "(";
      for (std::size_t i = 0; i < n.kids.size(); ++i) s += (i ? (n.op == Op::conj ? " & " : " | ") : "") + render_node(n.kids[i]);
      return s + ")";
    }
  }
  return "?";
}

void check_node(const Sigma1Node& n, int vars, std::size_t params) {
  using Op = Sigma1Node::Op;
  for (const auto& v : n.terms)
    if (v.index < 0 || (v.param ? static_cast<std::size_t>(v.index) >= params : v.index >= vars))
      throw std::invalid_argument("formula refers to " + var_name(v) + " out of range");
  switch (n.op) {
    case Op::truth:
      if (!n.terms.empty() || !n.kids.empty()) throw std::invalid_argument("malformed truth node");
      break;
    case Op::le:
    case Op::leq1:
      if (n.terms.size() != 2 || !n.kids.empty()) throw std::invalid_argument("binary atom needs two terms");
      break;
    case Op::repr:
      if (n.terms.empty() || !n.kids.empty()) throw std::invalid_argument("representation atom needs a head");
      break;
    case Op::neg:
      if (n.kids.size() != 1 || !n.terms.empty()) throw std::invalid_argument("negation takes one formula");
      break;
    case Op::conj:
    case Op::disj:
      if (!n.terms.empty()) throw std::invalid_argument("connective with terms");
      break;
  }
  for (const auto& k : n.kids) check_node(k, vars, params);
}

struct Eval {
  const Leq1Table& t;
  const std::vector<Ordinal>& params;
  std::vector<Ordinal> vals;

  const Ordinal& at(const Sigma1Var& v) const {
    return v.param ? params[static_cast<std::size_t>(v.index)] : vals[static_cast<std::size_t>(v.index)];
  }

  bool operator()(const Sigma1Node& n) const {
    using Op = Sigma1Node::Op;
    switch (n.op) {
      case Op::truth: return true;
      case Op::le: return !(at(n.terms[1]) < at(n.terms[0]));
      case Op::leq1: return t.holds(at(n.terms[0]), at(n.terms[1]));
      case Op::repr: {
        const auto& r = t.repr(at(n.terms[0]));
        if (!r || r->sigma != n.sigma || r->args.size() + 1 != n.terms.size()) return false;
        for (std::size_t i = 1; i < n.terms.size(); ++i)
          if (r->args[i - 1] != ExtendedBase(at(n.terms[i]))) return false;
        return true;
      }
      case Op::neg: return !(*this)(n.kids[0]);
      case Op::conj:
        return std::all_of(n.kids.begin(), n.kids.end(), [&](const Sigma1Node& k) { return (*this)(k); });
      case Op::disj:
        return std::any_of(n.kids.begin(), n.kids.end(), [&](const Sigma1Node& k) { return (*this)(k); });
    }
    return false;
  }
};

Sigma1Node atom(Sigma1Node::Op op, std::vector<Sigma1Var> terms, Ordinal sigma = {}) {
  Sigma1Node n;
  n.op = op;
  n.terms = std::move(terms);
  n.sigma = std::move(sigma);
  return n;
}

Sigma1Node negate(Sigma1Node k) {
  Sigma1Node n;
  n.op = Sigma1Node::Op::neg;
  n.kids.push_back(std::move(k));
  return n;
}

}  // namespace

std::string render(const Sigma1& phi) {
  std::string s;
  if (phi.vars > 0) {
    s = "exists";
    for (int i = 0; i < phi.vars; ++i) s += " y" + std::to_string(i);
    s += ". ";
  }
  return s + render_node(phi.matrix);
}

void check_formula(const Sigma1& phi, std::size_t params) {
  if (phi.vars < 0) throw std::invalid_argument("negative variable count");
  check_node(phi.matrix, phi.vars, params);
}

bool sigma1_holds(const Leq1Table& t, const Sigma1& phi, const std::vector<Ordinal>& params, const std::optional<Ordinal>& below) {
  check_formula(phi, params.size());
  for (const auto& p : params)
    if (!t.index_of(p)) throw std::invalid_argument("parameter " + render(p) + " outside the universe");
  std::vector<Ordinal> dom;
  for (const auto& x : t.universe())
    if (!below || x < *below) dom.push_back(x);
  Eval ev{t, params, std::vector<Ordinal>(static_cast<std::size_t>(phi.vars))};
  if (phi.vars == 0) return ev(phi.matrix);
  if (dom.empty()) return false;
  std::vector<std::size_t> idx(static_cast<std::size_t>(phi.vars), 0);
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) ev.vals[i] = dom[idx[i]];
    if (ev(phi.matrix)) return true;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == dom.size()) idx[k++] = 0;
    if (k == idx.size()) return false;
  }
}

Sigma1 diagram_formula(const Leq1Table& t, const std::vector<Ordinal>& params, const std::vector<Ordinal>& witnesses) {
  using Op = Sigma1Node::Op;
  std::vector<Ordinal> elems = params;
  std::vector<Sigma1Var> names;
  for (std::size_t i = 0; i < params.size(); ++i) names.push_back({true, static_cast<int>(i)});
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    elems.push_back(witnesses[i]);
    names.push_back({false, static_cast<int>(i)});
  }
  Sigma1 phi;
  phi.vars = static_cast<int>(witnesses.size());
  phi.matrix.op = Op::conj;
  auto lit = [&](bool truth, Sigma1Node a) { phi.matrix.kids.push_back(truth ? std::move(a) : negate(std::move(a))); };
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) {
      if (a == b) continue;
      lit(!(elems[b] < elems[a]), atom(Op::le, {names[a], names[b]}));
      lit(t.holds(elems[a], elems[b]), atom(Op::leq1, {names[a], names[b]}));
    }
  for (std::size_t a = 0; a < elems.size(); ++a) {
    const auto& r = t.repr(elems[a]);
    if (!r) continue;
    std::vector<Sigma1Var> terms{names[a]};
    bool inside = true;
    for (const auto& g : r->args) {
      auto it = g.is_plain() ? std::find(elems.begin(), elems.end(), g.as_plain()) : elems.end();
      if (it == elems.end()) {
        inside = false;
        break;
      }
      terms.push_back(names[static_cast<std::size_t>(it - elems.begin())]);
    }
    if (inside) lit(true, atom(Op::repr, terms, r->sigma));
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Closures.

std::vector<Ordinal> cl(const Dilator& d, const Ordinal& gamma) {
  std::set<Ordinal> out{gamma};
  if (!d.has_normality()) return {gamma};
  std::vector<Ordinal> todo{gamma};
  while (!todo.empty()) {
    Ordinal g = todo.back();
    todo.pop_back();
    for (const auto& a : repr_of_ordinal(d, g).args) {
      const Ordinal& x = a.as_plain();
      if (x < g && out.insert(x).second) todo.push_back(x);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Ordinal> closure(const Dilator& d, const std::vector<Ordinal>& z) {
  std::set<Ordinal> out;
  for (const auto& g : z)
    for (const auto& x : cl(d, g)) out.insert(x);
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Slices.

Slice club_slice(const Leq1Table& t, const Representation& gamma) {
  const Dilator& e = t.structure().dilator;
  if (!e.has_normality()) throw DilatorError("club slices need a normal dilator");
  if (gamma.args.empty()) throw DilatorError("club slices need gamma >= E(0)");
  Ordinal st = gamma.args.size() == 1 ? Ordinal() : succ(gamma.args[gamma.args.size() - 2].as_plain());
  Slice out;
  for (const auto& delta : t.universe()) {
    if (delta < st) continue;
    Representation gd = gamma;
    gd.args.back() = ExtendedBase(delta);
    Ordinal v;
    try {
      v = repr_value(e, gd);
    } catch (const DilatorError&) {
      out.undetermined.push_back(delta);
      continue;
    }
    if (!delta.is_finite() && !t.index_of(v)) {
      out.undetermined.push_back(delta);
      continue;
    }
    if (t.holds(delta, v)) out.members.push_back(delta);
  }
  return out;
}

std::string render(const DDElement& r) {
  std::string s = "<" + render(r.sigma) + " ;";
  for (std::size_t i = 0; i < r.args.size(); ++i) s += (i ? ", " : " ") + render(r.args[i]);
  return s + ">";
}

void check_dd(const Dilator& d, const DDElement& r) {
  int n = static_cast<int>(r.args.size()) + 1;
  if (!is_trace_element(d, r.sigma, n))
    throw DilatorError("(" + render(r.sigma) + "," + std::to_string(n) + ") is not a trace element of " + d.describe());
  for (std::size_t i = 1; i < r.args.size(); ++i)
    if (!(r.args[i - 1] < r.args[i])) throw DilatorError("args must strictly increase: " + render(r));
}

std::strong_ordering dd_compare(const Dilator& d, const DDElement& a, const DDElement& b) {
  check_dd(d, a);
  check_dd(d, b);
  std::vector<Ordinal> u;
  std::merge(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), std::back_inserter(u));
  u.erase(std::unique(u.begin(), u.end()), u.end());
  int top = static_cast<int>(u.size());
  auto embed = [&](const DDElement& r) {
    Morphism f{static_cast<int>(r.args.size()) + 1, top + 1, {}};
    for (const auto& x : r.args) f.map.push_back(static_cast<int>(std::lower_bound(u.begin(), u.end(), x) - u.begin()));
    f.map.push_back(top);  // Omega sits above every plain argument
    return f;
  };
  return compare(d.apply(embed(a), a.sigma), d.apply(embed(b), b.sigma));
}

Ordinal dd_plus(const DDElement& r) { return r.args.empty() ? Ordinal() : succ(r.args.back()); }

Representation dd_substitute(const DDElement& r, const Ordinal& delta) {
  if (delta < dd_plus(r)) throw DilatorError("substitution needs delta >= " + render(dd_plus(r)));
  Representation out{r.sigma, {}};
  for (const auto& x : r.args) out.args.emplace_back(x);
  out.args.emplace_back(delta);
  return out;
}

std::vector<DDElement> dd_members(const Dilator& d, const Ordinal& eta, int max_args, const std::vector<Ordinal>& pool) {
  std::vector<Ordinal> below;
  for (const auto& p : pool)
    if (p < eta) below.push_back(p);
  std::sort(below.begin(), below.end());
  below.erase(std::unique(below.begin(), below.end()), below.end());
  std::vector<DDElement> out;
  for (const auto& te : enumerate_trace(d, max_args + 1)) {
    if (te.arity == 0) continue;
    std::size_t n = static_cast<std::size_t>(te.arity - 1);
    if (n > below.size()) continue;
    std::vector<bool> choose(below.size(), false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
      DDElement r{te.sigma, {}};
      for (std::size_t i = 0; i < below.size(); ++i)
        if (choose[i]) r.args.push_back(below[i]);
      out.push_back(std::move(r));
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  std::sort(out.begin(), out.end(), [&](const DDElement& a, const DDElement& b) { return dd_compare(d, a, b) < 0; });
  return out;
}

FdSlice fd_slice(const Leq1Table& t, const Representation& gamma, const Ordinal& eta, const Ordinal& window, int max_args) {
  const Dilator& e = t.structure().dilator;
  if (!e.has_normality()) throw DilatorError("fd slices need a normal dilator");
  std::vector<Ordinal> pool;
  for (const auto& x : t.universe())
    if (x < eta && x < window) pool.push_back(x);
  std::uint64_t fin = max_finite(t.universe()).value_or(0) + 2;
  for (std::uint64_t k = 0; k <= fin; ++k)
    if (Ordinal::nat(k) < eta && Ordinal::nat(k) < window) pool.push_back(Ordinal::nat(k));
  FdSlice out;
  for (const auto& rho : dd_members(e, eta, max_args, pool)) {
    Representation beta = dd_substitute(rho, window);
    if (repr_compare(e, beta, gamma) < 0) out.index.push_back(beta);
  }
  // Per element: excluded by some slice, else undetermined by some slice,
  // else a member of every slice.
  std::vector<Slice> slices;
  for (const auto& beta : out.index) slices.push_back(club_slice(t, beta));
  auto has = [](const std::vector<Ordinal>& v, const Ordinal& x) { return std::binary_search(v.begin(), v.end(), x); };
  for (const auto& u : t.universe()) {
    bool excluded = false, open = false;
    for (const auto& s : slices) {
      if (has(s.members, u)) continue;
      if (has(s.undetermined, u)) open = true;
      else excluded = true;
    }
    if (excluded) continue;
    (open ? out.slice.undetermined : out.slice.members).push_back(u);
  }
  return out;
}

}  // namespace patterns

#include "patterns/term.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

namespace patterns {

// ---------------------------------------------------------------------------
// Text form.

namespace {

std::string join_args(const std::vector<ExtendedBase>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + render(args[i]);
  return out;
}

struct Piece {
  std::string_view text;
  std::size_t offset;
};

// Splits at `sep` occurring outside parentheses.
std::vector<Piece> split_top(std::string_view s, std::size_t offset, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == sep) {
      out.push_back({s.substr(start, i - start), offset + start});
      start = i + 1;
    }
  }
  out.push_back({s.substr(start), offset + start});
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

template <class T, class Fn>
T at_offset(const Piece& p, Fn&& fn) {
  try {
    return fn(p.text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")), p.offset + e.position());
  }
}

// Strips the outer parentheses and returns the ';'-separated parts.
std::vector<Piece> term_parts(std::string_view text) {
  std::size_t a = 0;
  while (a < text.size() && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  std::size_t b = text.size();
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  if (a >= b || text[a] != '(') throw ParseError("expected '('", a);
  if (text[b - 1] != ')') throw ParseError("expected ')'", b > 0 ? b - 1 : 0);
  int depth = 0;
  for (std::size_t i = a; i < b; ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && i + 1 < b) throw ParseError("unexpected text after ')'", i + 1);
    if (depth < 0) throw ParseError("unbalanced ')'", i);
  }
  return split_top(text.substr(a + 1, b - a - 2), a + 1, ';');
}

std::vector<ExtendedBase> parse_args(const Piece& p) {
  std::vector<ExtendedBase> args;
  if (blank(p.text)) return args;
  for (const auto& q : split_top(p.text, p.offset, ','))
    args.push_back(at_offset<ExtendedBase>(q, [](std::string_view s) { return parse_extended(s); }));
  return args;
}

Ordinal parse_sigma(const Piece& p) {
  return at_offset<Ordinal>(p, [](std::string_view s) { return parse_ordinal(s); });
}

}  // namespace

std::string render(const Term& t) {
  if (t.args.empty()) return "(" + render(t.sigma) + " ; ; " + render(t.base) + ")";
  return "(" + render(t.sigma) + " ; " + join_args(t.args) + " ; " + render(t.base) + ")";
}

std::string render(const Representation& r) {
  if (r.args.empty()) return "(" + render(r.sigma) + " ;)";
  return "(" + render(r.sigma) + " ; " + join_args(r.args) + ")";
}

Term parse_term(std::string_view text) {
  auto parts = term_parts(text);
  if (parts.size() != 3) throw ParseError("a term has three ';'-separated parts", parts.back().offset);
  Term t;
  t.sigma = parse_sigma(parts[0]);
  t.args = parse_args(parts[1]);
  t.base = at_offset<ExtendedBase>(parts[2], [](std::string_view s) { return parse_extended(s); });
  return t;
}

Representation parse_representation(std::string_view text) {
  auto parts = term_parts(text);
  if (parts.size() != 2) throw ParseError("a representation has two ';'-separated parts", parts.back().offset);
  return Representation{parse_sigma(parts[0]), parse_args(parts[1])};
}

// ---------------------------------------------------------------------------
// Order.

bool is_trace_element(const Dilator& d, const Ordinal& sigma, int n) {
  if (!d.contains(n, sigma)) return false;
  return static_cast<int>(d.support(n, sigma).size()) == n;
}

void check_term(const Dilator& d, const Term& t) {
  int n = static_cast<int>(t.args.size());
  check_arity(d, n);
  if (!is_trace_element(d, t.sigma, n))
    throw DilatorError("(" + render(t.sigma) + "," + std::to_string(n) + ") is not a trace element of " + d.describe());
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i > 0 && !(t.args[i - 1] < t.args[i])) throw DilatorError("term args must strictly increase: " + render(t));
    if (!(t.args[i] < t.base)) throw DilatorError("term args must lie below the base: " + render(t));
  }
}

std::strong_ordering compare_args(const Dilator& d, const Ordinal& s, const std::vector<ExtendedBase>& c,
                                  const Ordinal& t, const std::vector<ExtendedBase>& e) {
  std::vector<ExtendedBase> u;
  std::merge(c.begin(), c.end(), e.begin(), e.end(), std::back_inserter(u));
  u.erase(std::unique(u.begin(), u.end()), u.end());
  int n = static_cast<int>(u.size());
  auto positions = [&](const std::vector<ExtendedBase>& xs) {
    std::vector<int> p;
    for (const auto& x : xs) p.push_back(static_cast<int>(std::lower_bound(u.begin(), u.end(), x) - u.begin()));
    return Morphism{static_cast<int>(xs.size()), n, p};
  };
  return compare(d.apply(positions(c), s), d.apply(positions(e), t));
}

std::strong_ordering term_compare(const Dilator& d, const Term& s, const Term& t) {
  if (s.base != t.base) throw DilatorError("term_compare needs a common base");
  check_term(d, s);
  check_term(d, t);
  return compare_args(d, s.sigma, s.args, t.sigma, t.args);
}

std::optional<ExtendedBase> Embedding::operator()(const ExtendedBase& x) const {
  for (const auto& [in, out] : points)
    if (in == x) return out;
  if (!xi) return std::nullopt;
  if (x < *xi) return x;
  return add(shift, x);
}

Term term_map(const Dilator& d, const Embedding& f, const Term& t, const ExtendedBase& new_base) {
  check_term(d, t);
  Term out{t.sigma, {}, new_base};
  for (const auto& x : t.args) {
    auto y = f(x);
    if (!y) throw DilatorError("embedding undefined at " + render(x));
    if (!out.args.empty() && !(out.args.back() < *y)) throw DilatorError("embedding not increasing on the args of " + render(t));
    if (!(*y < new_base)) throw DilatorError("embedding leaves the target base at " + render(x));
    out.args.push_back(*y);
  }
  return out;
}

std::vector<ExtendedBase> term_support(const Term& t) { return t.args; }

Term mu_bar(const Dilator& d, const ExtendedBase& alpha, const ExtendedBase& gamma) {
  if (!(gamma < alpha)) throw DilatorError("mu_bar needs gamma < alpha");
  return Term{d.mu(1, 0), {gamma}, alpha};
}

// ---------------------------------------------------------------------------
// Representations.

Representation representation(const Dilator& d, const Term& t) {
  if (!d.has_normality()) throw DilatorError(d.describe() + " lacks normality data");
  check_term(d, t);
  return Representation{t.sigma, t.args};
}

ExtendedBase minimal_base(const Representation& r) { return r.args.empty() ? ExtendedBase() : succ(r.args.back()); }

Term attach(const Dilator& d, const Representation& r, const ExtendedBase& base) {
  Term t{r.sigma, r.args, base};
  check_term(d, t);
  return t;
}

std::strong_ordering repr_compare(const Dilator& d, const Representation& a, const Representation& b) {
  return compare_args(d, a.sigma, a.args, b.sigma, b.args);
}

namespace {

bool all_finite(const std::vector<ExtendedBase>& xs) {
  return std::all_of(xs.begin(), xs.end(), [](const ExtendedBase& x) { return x.is_finite(); });
}

Ordinal nat_times(std::uint64_t m, const Ordinal& b) {
  std::uint64_t k = finite_part(b);
  return limit_part(b) + Ordinal::nat(m * k);
}

bool is_finite_const(const Dilator& d) { return d.kind() == Dilator::Kind::constant && d.const_value().is_finite(); }

}  // namespace

Ordinal repr_value(const Dilator& d, const Representation& r) {
  if (!d.has_normality()) throw DilatorError(d.describe() + " lacks normality data");
  if (all_finite(r.args)) {
    std::vector<int> idx;
    for (const auto& a : r.args) idx.push_back(static_cast<int>(a.as_plain().to_nat()));
    int N = idx.empty() ? 0 : idx.back() + 1;
    return d.apply(enumerate(idx, N), r.sigma);
  }
  for (const auto& a : r.args) a.as_plain();
  switch (d.kind()) {
    case Dilator::Kind::identity:
      if (r.args.size() == 1 && r.sigma.is_zero()) return r.args[0].as_plain();
      break;
    case Dilator::Kind::sigma:
      if (is_finite_const(d.child(0)) && r.args.size() == 1) {
        std::uint64_t m = 1 + d.child(0).const_value().to_nat();
        return nat_times(m, r.args[0].as_plain()) + r.sigma;
      }
      break;
    case Dilator::Kind::sum: {
      const Ordinal& c = d.child(0).const_value();
      return c + repr_value(d.child(1), Representation{left_subtract(c, r.sigma), r.args});
    }
    default: break;
  }
  throw DilatorError("no closed form for values of " + d.describe() + " at infinite arguments");
}

Representation repr_of_ordinal(const Dilator& d, const Ordinal& gamma) {
  if (!d.has_normality()) throw DilatorError(d.describe() + " lacks normality data");
  if (gamma.is_finite()) {
    int N = static_cast<int>(gamma.to_nat()) + 1;
    if (!d.contains(N, gamma)) throw DilatorError("normality fails: " + render(gamma) + " not below D(" + std::to_string(N) + ")");
    auto s = d.support(N, gamma);
    auto sigma = d.preimage(enumerate(s, N), gamma);
    if (!sigma) throw DilatorError("support condition fails at " + render(gamma));
    Representation r{*sigma, {}};
    for (int x : s) r.args.push_back(ExtendedBase::nat(static_cast<std::uint64_t>(x)));
    return r;
  }
  switch (d.kind()) {
    case Dilator::Kind::identity: return Representation{Ordinal(), {gamma}};
    case Dilator::Kind::sigma:
      if (is_finite_const(d.child(0))) {
        std::uint64_t m = 1 + d.child(0).const_value().to_nat();
        std::uint64_t r = finite_part(gamma);
        Ordinal arg = limit_part(gamma) + Ordinal::nat(r / m);
        return Representation{Ordinal::nat(r % m), {arg}};
      }
      break;
    case Dilator::Kind::sum: {
      const Ordinal& c = d.child(0).const_value();
      auto inner = repr_of_ordinal(d.child(1), left_subtract(c, gamma));
      return Representation{c + inner.sigma, inner.args};
    }
    default: break;
  }
  throw DilatorError("no closed form for representations of " + d.describe() + " at infinite ordinals");
}

// ---------------------------------------------------------------------------
// Navigation.

namespace {

using State = MaxInfo::State;

MaxInfo none() { return MaxInfo{State::empty, std::nullopt}; }
MaxInfo attained(Term t) { return MaxInfo{State::attained, std::move(t)}; }
MaxInfo unbounded() { return MaxInfo{State::unbounded, std::nullopt}; }

Term sum_lift_right(const Dilator& d, const Term& sub) {
  int n = static_cast<int>(sub.args.size());
  return Term{d.child(0).value(n) + sub.sigma, sub.args, sub.base};
}

// Splits a Sum term into (is_right, subterm).
std::pair<bool, Term> sum_split(const Dilator& d, const Term& t) {
  int n = static_cast<int>(t.args.size());
  Ordinal left = d.child(0).value(n);
  if (t.sigma < left) return {false, t};
  return {true, Term{left_subtract(left, t.sigma), t.args, t.base}};
}

Term sigma_point(const ExtendedBase& rho, const ExtendedBase& alpha) { return Term{Ordinal(), {rho}, alpha}; }

Term sigma_lift(const Dilator& d, const Term& sub, const ExtendedBase& alpha) {
  int m = static_cast<int>(sub.args.size());
  Term t{d.sigma_value(m) + Ordinal::nat(1) + sub.sigma, sub.args, alpha};
  t.args.push_back(sub.base);
  return t;
}

// nullopt for the point E(rho) = (0; rho); otherwise the D-term of the window.
std::optional<Term> sigma_split(const Dilator& d, const Term& t) {
  int n = static_cast<int>(t.args.size());
  auto [k, beta] = d.sigma_decompose(n, t.sigma);
  if (k != n - 1) throw DilatorError("not a trace term of " + d.describe() + ": " + render(t));
  if (!beta) return std::nullopt;
  return Term{*beta, std::vector<ExtendedBase>(t.args.begin(), t.args.end() - 1), t.args.back()};
}

std::optional<Term> sigma_next_point(const ExtendedBase& rho, const ExtendedBase& alpha) {
  ExtendedBase r1 = succ(rho);
  if (r1 < alpha) return sigma_point(r1, alpha);
  return std::nullopt;
}

std::vector<Term> table_terms(const Dilator& d, const ExtendedBase& alpha) {
  if (!alpha.is_finite()) throw DilatorError("navigation over infinite bases needs a combinator dilator");
  return enumerate_terms(d, alpha.as_plain());
}

std::size_t index_of(const Dilator& d, const std::vector<Term>& ts, const Term& t) {
  auto it = std::lower_bound(ts.begin(), ts.end(), t, [&](const Term& a, const Term& b) { return term_compare(d, a, b) < 0; });
  if (it == ts.end() || !(*it == t)) throw DilatorError("term not found: " + render(t));
  return static_cast<std::size_t>(it - ts.begin());
}

}  // namespace

std::vector<Term> enumerate_terms(const Dilator& d, const Ordinal& alpha) {
  int N = static_cast<int>(alpha.to_nat());
  int top = N;
  if (auto b = d.bound()) top = std::min(top, *b);
  std::vector<Term> out;
  for (const auto& te : enumerate_trace(d, top))
    for (const auto& f : all_morphisms(te.arity, N)) {
      Term t{te.sigma, {}, ExtendedBase(alpha)};
      for (int x : f.map) t.args.push_back(ExtendedBase::nat(static_cast<std::uint64_t>(x)));
      out.push_back(std::move(t));
    }
  std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) { return term_compare(d, a, b) < 0; });
  return out;
}

std::optional<Term> term_min(const Dilator& d, const ExtendedBase& alpha) {
  switch (d.kind()) {
    case Dilator::Kind::constant:
      if (d.const_value().is_zero()) return std::nullopt;
      return Term{Ordinal(), {}, alpha};
    case Dilator::Kind::identity:
      if (alpha == ExtendedBase()) return std::nullopt;
      return Term{Ordinal(), {ExtendedBase()}, alpha};
    case Dilator::Kind::sum: {
      if (auto m = term_min(d.child(0), alpha)) return m;
      if (auto m = term_min(d.child(1), alpha)) return sum_lift_right(d, *m);
      return std::nullopt;
    }
    case Dilator::Kind::sigma:
      if (alpha == ExtendedBase()) return std::nullopt;
      return sigma_point(ExtendedBase(), alpha);
    case Dilator::Kind::table: {
      auto ts = table_terms(d, alpha);
      if (ts.empty()) return std::nullopt;
      return ts.front();
    }
  }
  return std::nullopt;
}

MaxInfo term_max(const Dilator& d, const ExtendedBase& alpha) {
  switch (d.kind()) {
    case Dilator::Kind::constant: {
      const Ordinal& nu = d.const_value();
      if (nu.is_zero()) return none();
      if (classify(nu) == OrdKind::limit) return unbounded();
      return attained(Term{pred(nu), {}, alpha});
    }
    case Dilator::Kind::identity:
      switch (classify(alpha)) {
        case OrdKind::zero: return none();
        case OrdKind::limit: return unbounded();
        case OrdKind::successor: return attained(Term{Ordinal(), {pred(alpha)}, alpha});
      }
      break;
    case Dilator::Kind::sum: {
      auto m2 = term_max(d.child(1), alpha);
      if (m2.state == State::empty) return term_max(d.child(0), alpha);
      if (m2.state == State::unbounded) return m2;
      return attained(sum_lift_right(d, *m2.term));
    }
    case Dilator::Kind::sigma: {
      switch (classify(alpha)) {
        case OrdKind::zero: return none();
        case OrdKind::limit: return unbounded();
        case OrdKind::successor: break;
      }
      ExtendedBase rho = pred(alpha);
      auto m = term_max(d.child(0), rho);
      if (m.state == State::empty) return attained(sigma_point(rho, alpha));
      if (m.state == State::unbounded) return m;
      return attained(sigma_lift(d, *m.term, alpha));
    }
    case Dilator::Kind::table: {
      auto ts = table_terms(d, alpha);
      if (ts.empty()) return none();
      return attained(ts.back());
    }
  }
  return none();
}

std::optional<Term> term_succ(const Dilator& d, const Term& t) {
  check_term(d, t);
  switch (d.kind()) {
    case Dilator::Kind::constant: {
      Ordinal s = succ(t.sigma);
      if (s < d.const_value()) return Term{s, {}, t.base};
      return std::nullopt;
    }
    case Dilator::Kind::identity: {
      ExtendedBase s = succ(t.args[0]);
      if (s < t.base) return Term{Ordinal(), {s}, t.base};
      return std::nullopt;
    }
    case Dilator::Kind::sum: {
      auto [right, sub] = sum_split(d, t);
      if (right) {
        auto s = term_succ(d.child(1), sub);
        if (s) return sum_lift_right(d, *s);
        return std::nullopt;
      }
      if (auto s = term_succ(d.child(0), sub)) return s;
      if (auto m = term_min(d.child(1), t.base)) return sum_lift_right(d, *m);
      return std::nullopt;
    }
    case Dilator::Kind::sigma: {
      auto sub = sigma_split(d, t);
      if (!sub) {
        const ExtendedBase& rho = t.args[0];
        if (auto m = term_min(d.child(0), rho)) return sigma_lift(d, *m, t.base);
        return sigma_next_point(rho, t.base);
      }
      if (auto s = term_succ(d.child(0), *sub)) return sigma_lift(d, *s, t.base);
      return sigma_next_point(sub->base, t.base);
    }
    case Dilator::Kind::table: {
      auto ts = table_terms(d, t.base);
      std::size_t i = index_of(d, ts, t);
      if (i + 1 < ts.size()) return ts[i + 1];
      return std::nullopt;
    }
  }
  return std::nullopt;
}

OrdKind term_classify(const Dilator& d, const Term& t) {
  check_term(d, t);
  switch (d.kind()) {
    case Dilator::Kind::constant: return classify(t.sigma);
    case Dilator::Kind::identity: return classify(t.args[0]);
    case Dilator::Kind::sum: {
      auto [right, sub] = sum_split(d, t);
      if (!right) return term_classify(d.child(0), sub);
      OrdKind k = term_classify(d.child(1), sub);
      if (k != OrdKind::zero) return k;
      switch (term_max(d.child(0), t.base).state) {
        case State::empty: return OrdKind::zero;
        case State::attained: return OrdKind::successor;
        case State::unbounded: return OrdKind::limit;
      }
      break;
    }
    case Dilator::Kind::sigma: {
      auto sub = sigma_split(d, t);
      if (sub) {
        OrdKind k = term_classify(d.child(0), *sub);
        return k == OrdKind::zero ? OrdKind::successor : k;
      }
      const ExtendedBase& rho = t.args[0];
      switch (classify(rho)) {
        case OrdKind::zero: return OrdKind::zero;
        case OrdKind::limit: return OrdKind::limit;
        case OrdKind::successor: break;
      }
      // E(rho'+1) follows the window above E(rho'); it is a successor exactly
      // when that window has a largest element.
      return term_max(d.child(0), pred(rho)).state == State::unbounded ? OrdKind::limit : OrdKind::successor;
    }
    case Dilator::Kind::table: {
      auto ts = table_terms(d, t.base);
      return index_of(d, ts, t) == 0 ? OrdKind::zero : OrdKind::successor;
    }
  }
  return OrdKind::zero;
}

// ---------------------------------------------------------------------------
// Well-foundedness refutation.

namespace {

// Shift embeddings x |-> s + x map alpha into itself when alpha is Omega or a
// power of omega above s.
bool closed_under_shift(const ExtendedBase& alpha, const Ordinal& s) {
  if (alpha.is_omega_plus()) return alpha.offset().is_zero();
  const Ordinal& a = alpha.offset();
  if (a.terms().size() != 1 || a.terms()[0].coeff != 1 || a.exponent(0).is_zero()) return false;
  return s < a;
}

ExtendedBase sample_arg(const ExtendedBase& alpha, std::mt19937_64& rng) {
  if (alpha.is_plain()) return ExtendedBase(sample_below(alpha.as_plain(), rng));
  if (!alpha.offset().is_zero() && rng() % 3 == 0) return ExtendedBase::omega_plus(sample_below(alpha.offset(), rng));
  Ordinal w2 = Ordinal::omega_pow(Ordinal::nat(2));
  return ExtendedBase(sample_below(w2, rng));
}

}  // namespace

WfProbe wf_probe(const Dilator& d, const ExtendedBase& alpha, std::size_t budget, std::uint64_t seed) {
  WfProbe out;
  // A finite base yields a finite order.
  if (alpha.is_finite()) return out;
  std::mt19937_64 rng(seed);
  int max_arity = 3;
  if (auto b = d.bound()) max_arity = std::min(max_arity, *b / 2);
  std::vector<TraceElement> trace;
  try {
    trace = enumerate_trace(d, max_arity);
  } catch (const DilatorError&) {
    return out;
  }
  if (trace.empty()) return out;
  std::vector<Ordinal> shifts = {Ordinal::nat(1), Ordinal::nat(2), Ordinal::omega()};
  while (out.steps < budget) {
    ++out.steps;
    const auto& te = trace[rng() % trace.size()];
    std::set<ExtendedBase> picks;
    int guard = 0;
    while (static_cast<int>(picks.size()) < te.arity && guard++ < 50) picks.insert(sample_arg(alpha, rng));
    if (static_cast<int>(picks.size()) < te.arity) continue;
    Term t{te.sigma, {picks.begin(), picks.end()}, alpha};
    const Ordinal& s = shifts[rng() % shifts.size()];
    if (!closed_under_shift(alpha, s)) continue;
    ExtendedBase xi = t.args.empty() || rng() % 2 ? ExtendedBase() : t.args[rng() % t.args.size()];
    Embedding f = Embedding::shift_from(xi, s);
    Term ft = term_map(d, f, t, alpha);
    if (term_compare(d, ft, t) < 0) {
      Term fft = term_map(d, f, ft, alpha);
      if (term_compare(d, fft, ft) < 0) {
        out.refuted = true;
        out.chain = {t, ft, fft};
        out.embedding = f;
        return out;
      }
    }
  }
  return out;
}

}  // namespace patterns

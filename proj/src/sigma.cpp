#include "patterns/sigma.hpp"

#include <random>
#include <set>

namespace patterns {

SigmaPresentation sigma_dilator(const Dilator& d, int bound) {
  Report r = validate_predilator(d, bound);
  for (const auto& l : r.laws)
    if (!l.passed) {
      std::string where = l.counterexample ? " at " + l.counterexample->location : "";
      throw DilatorError("underlying dilator fails " + l.law + where);
    }
  return SigmaPresentation{d, Dilator::sigma(d)};
}

Term xi_embed(const Dilator& d, const ExtendedBase& alpha, const Term& t) {
  if (t.base != alpha) throw DilatorError("xi_embed: term base differs from alpha");
  check_term(d, t);
  Dilator s = Dilator::sigma(d);
  int n = static_cast<int>(t.args.size());
  Term out{s.sigma_value(n) + Ordinal::nat(1) + t.sigma, t.args, succ(alpha)};
  out.args.push_back(alpha);
  return out;
}

Representation e_point(const Dilator& e, const ExtendedBase& rho) { return Representation{e.mu(1, 0), {rho}}; }

ExtendedBase star(const Dilator& e, const Representation& r) {
  (void)e;
  if (r.args.empty()) throw DilatorError("star is undefined below E(0): " + render(r));
  if (r.args.size() == 1) return ExtendedBase();
  return succ(r.args[r.args.size() - 2]);
}

Representation substitute_last(const Dilator& e, const Representation& r, const ExtendedBase& delta) {
  ExtendedBase s = star(e, r);
  if (delta < s) throw DilatorError("substitution needs delta >= " + render(s) + ", got " + render(delta));
  Representation out = r;
  out.args.back() = delta;
  return out;
}

Representation repr_succ(const Dilator& e, const Representation& r) {
  // Over base last+2 the successor exists: E(last+1) is a term there.
  Term t = attach(e, r, succ(minimal_base(r)));
  auto s = term_succ(e, t);
  if (!s) throw DilatorError("no successor for " + render(r) + " in " + e.describe());
  return representation(e, *s);
}

OrdKind repr_classify(const Dilator& e, const Representation& r) {
  return term_classify(e, attach(e, r, minimal_base(r)));
}

// ---------------------------------------------------------------------------
// Fundamental-lemma battery.

namespace {

const Ordinal& cap() {
  static const Ordinal w3 = Ordinal::omega_pow(Ordinal::nat(3));
  return w3;
}

class Sampler {
 public:
  Sampler(const Dilator& e, std::uint64_t seed) : e_(e), rng_(seed) {
    for (int n = 1; n <= 5; ++n) {
      if (auto b = e.bound(); b && n > *b) break;
      for (const auto& s : sample_fiber(e, n, rng_, 24))
        if (is_trace_element(e, s, n)) trace_.push_back({s, n});
    }
  }

  std::mt19937_64& rng() { return rng_; }

  // Biased towards small finite ordinals and limits.
  Ordinal below(const Ordinal& x) {
    if (x.is_zero()) throw DilatorError("nothing below 0");
    std::uint64_t pick = rng_() % 5;
    if (pick == 0 && !x.is_finite()) return Ordinal::nat(rng_() % 4);
    Ordinal o = sample_below(x, rng_);
    if (pick == 1 && !limit_part(o).is_zero()) return limit_part(o);
    return o;
  }

  // Uniform-ish in [lo, hi).
  Ordinal between(const Ordinal& lo, const Ordinal& hi) { return lo + below(left_subtract(lo, hi)); }
  Ordinal at_least(const Ordinal& lo) { return between(lo, cap()); }

  std::optional<Ordinal> limit_between(const Ordinal& lo, const Ordinal& hi) {
    for (int i = 0; i < 8; ++i) {
      Ordinal x = limit_part(between(lo, hi));
      if (!x.is_zero() && !(x < lo)) return x;
    }
    return std::nullopt;
  }

  // A member of the window [E(rho), E(rho+1)) whose non-final arguments lie
  // below `args_below` (default rho).
  std::optional<Representation> window(const Ordinal& rho, std::optional<Ordinal> args_below = std::nullopt,
                                       bool allow_point = true) {
    Ordinal lim = args_below.value_or(rho);
    if (allow_point && rng_() % 5 == 0) return e_point(e_, ExtendedBase(rho));
    if (trace_.empty()) return std::nullopt;
    const auto& te = trace_[rng_() % trace_.size()];
    std::set<Ordinal> picks;
    int want = te.arity - 1;
    for (int g = 0; static_cast<int>(picks.size()) < want && g < 50; ++g)
      if (!lim.is_zero()) picks.insert(below(lim));
    if (static_cast<int>(picks.size()) < want) return std::nullopt;
    Representation r{te.sigma, {}};
    for (const auto& p : picks) r.args.emplace_back(p);
    r.args.emplace_back(rho);
    return r;
  }

 private:
  const Dilator& e_;
  std::mt19937_64 rng_;
  std::vector<TraceElement> trace_;
};

struct Clause {
  LawResult law;
  std::size_t attempts = 0;

  explicit Clause(std::string name) {
    law.law = std::move(name);
    law.passed = true;
    law.exhaustive = false;
  }
  void fail(const std::string& loc, std::vector<std::pair<std::string, std::string>> fields) {
    if (!law.passed) return;
    law.passed = false;
    law.counterexample = Counterexample{loc, std::move(fields)};
  }
};

bool lt(const Dilator& e, const Representation& a, const Representation& b) { return repr_compare(e, a, b) < 0; }

std::string R(const Representation& r) { return render(r); }
std::string O(const Ordinal& o) { return render(o); }

// Premise of clause (g) needs a limit strictly inside a window. For sigma of
// a finite constant every window is E(rho), E(rho)+1, ..., E(rho)+c: none.
bool windows_have_no_inner_limits(const Dilator& e) {
  return e.kind() == Dilator::Kind::sigma && e.child(0).kind() == Dilator::Kind::constant &&
         e.child(0).const_value().is_finite();
}

}  // namespace

Report check_fund_basic(const Dilator& e, std::size_t samples, std::uint64_t seed) {
  if (!e.has_normality()) throw DilatorError(e.describe() + " lacks normality data");
  Report rep;
  rep.subject = e.describe();
  const std::size_t budget = 60 * samples + 100;
  auto E = [&](const Ordinal& r) { return e_point(e, ExtendedBase(r)); };
  auto X = [](const Ordinal& o) { return ExtendedBase(o); };

  auto run = [&](const std::string& name, std::uint64_t salt, auto&& body) {
    Clause c(name);
    Sampler s(e, seed * 0x9e3779b97f4a7c15ULL + salt);
    while (c.law.checked < samples && c.attempts < budget && c.law.passed) {
      ++c.attempts;
      if (body(s, c)) ++c.law.checked;
    }
    rep.laws.push_back(c.law);
  };

  // (a) E(delta) <= gamma[delta] < E(delta+1) for delta >= gamma*.
  run("fund-a", 1, [&](Sampler& s, Clause& c) {
    Ordinal rho = s.below(cap());
    auto g = s.window(rho);
    if (!g) return false;
    Ordinal d = s.at_least(star(e, *g).as_plain());
    Representation gd = substitute_last(e, *g, X(d));
    if (lt(e, gd, E(d)) || !lt(e, gd, E(succ(d))))
      c.fail("gamma=" + R(*g) + " delta=" + O(d), {{"gamma[delta]", R(gd)}, {"E(delta)", R(E(d))}});
    return true;
  });

  // (b) E(delta) <= gamma < E(delta+1) gives delta >= gamma* and gamma[delta] = gamma.
  run("fund-b", 2, [&](Sampler& s, Clause& c) {
    Ordinal rho = s.below(cap());
    auto g = s.window(rho);
    if (!g) return false;
    Ordinal d = s.rng()() % 4 ? rho : s.below(cap());
    if (lt(e, *g, E(d)) || !lt(e, *g, E(succ(d)))) return false;
    ExtendedBase st = star(e, *g);
    if (X(d) < st) {
      c.fail("gamma=" + R(*g) + " delta=" + O(d), {{"gamma*", render(st)}});
    } else if (substitute_last(e, *g, X(d)) != *g) {
      c.fail("gamma=" + R(*g) + " delta=" + O(d), {{"gamma[delta]", R(substitute_last(e, *g, X(d)))}});
    }
    return true;
  });

  // (c) gamma[delta]* = gamma* and gamma[delta][rho] = gamma[rho].
  run("fund-c", 3, [&](Sampler& s, Clause& c) {
    auto g = s.window(s.below(cap()));
    if (!g) return false;
    Ordinal st = star(e, *g).as_plain();
    Ordinal d = s.at_least(st), r = s.at_least(st);
    Representation gd = substitute_last(e, *g, X(d));
    if (star(e, gd) != X(st)) c.fail("gamma=" + R(*g) + " delta=" + O(d), {{"gamma[delta]*", render(star(e, gd))}});
    Representation lhs = substitute_last(e, gd, X(r)), rhs = substitute_last(e, *g, X(r));
    if (lhs != rhs)
      c.fail("gamma=" + R(*g) + " delta=" + O(d) + " rho=" + O(r), {{"gamma[delta][rho]", R(lhs)}, {"gamma[rho]", R(rhs)}});
    return true;
  });

  // (d) order transfer inside one window.
  run("fund-d", 4, [&](Sampler& s, Clause& c) {
    Ordinal rho = s.below(cap());
    auto b = s.window(rho), g = s.window(rho);
    if (!b || !g) return false;
    Ordinal lo = std::max(star(e, *b).as_plain(), star(e, *g).as_plain());
    Ordinal d = s.at_least(lo);
    Representation bd = substitute_last(e, *b, X(d)), gd = substitute_last(e, *g, X(d));
    if (lt(e, *b, *g) != lt(e, bd, gd))
      c.fail("beta=" + R(*b) + " gamma=" + R(*g) + " delta=" + O(d), {{"beta[delta]", R(bd)}, {"gamma[delta]", R(gd)}});
    return true;
  });

  // (e) (gamma+1)[delta] = gamma[delta]+1 when gamma+1 stays in the window and
  // rho >= delta >= max(gamma*, (gamma+1)*).
  run("fund-e", 5, [&](Sampler& s, Clause& c) {
    Ordinal rho = s.below(cap());
    auto g = s.window(rho);
    if (!g) return false;
    Representation g1 = repr_succ(e, *g);
    if (!lt(e, g1, E(succ(rho)))) return false;
    Ordinal lo = std::max(star(e, *g).as_plain(), star(e, g1).as_plain());
    Ordinal d = s.between(lo, succ(rho));
    Representation lhs = substitute_last(e, g1, X(d));
    Representation rhs = repr_succ(e, substitute_last(e, *g, X(d)));
    if (lhs != rhs) c.fail("gamma=" + R(*g) + " delta=" + O(d), {{"(gamma+1)[delta]", R(lhs)}, {"gamma[delta]+1", R(rhs)}});
    return true;
  });

  // (f) E(rho)* = 0 and E(rho)[delta] = E(delta).
  run("fund-f", 6, [&](Sampler& s, Clause& c) {
    Ordinal rho = s.below(cap()), d = s.below(cap());
    if (!star(e, E(rho)).as_plain().is_zero()) c.fail("rho=" + O(rho), {{"E(rho)*", render(star(e, E(rho)))}});
    if (substitute_last(e, E(rho), X(d)) != E(d)) c.fail("rho=" + O(rho) + " delta=" + O(d), {{"E(rho)[delta]", R(substitute_last(e, E(rho), X(d)))}});
    return true;
  });

  // (g) gamma, delta limits with E(rho) < gamma < E(rho+1) and rho >= delta >=
  // gamma*: gamma[delta] is a limit.
  if (windows_have_no_inner_limits(e)) {
    LawResult l;
    l.law = "fund-g";
    l.passed = true;
    l.note = "vacuous: every window above E(rho) is finite, so no limit lies strictly inside one";
    rep.laws.push_back(l);
  } else {
    run("fund-g", 7, [&](Sampler& s, Clause& c) {
      Ordinal rho = s.below(cap());
      auto d = s.limit_between(Ordinal(), succ(rho));
      if (!d) return false;
      auto g = s.window(rho, *d, false);
      if (!g || !lt(e, E(rho), *g) || repr_classify(e, *g) != OrdKind::limit) return false;
      if (X(*d) < star(e, *g)) return false;
      Representation gd = substitute_last(e, *g, X(*d));
      OrdKind k = repr_classify(e, gd);
      if (k != OrdKind::limit) c.fail("gamma=" + R(*g) + " delta=" + O(*d), {{"gamma[delta]", R(gd)}, {"kind", to_string(k)}});
      return true;
    });
  }
  return rep;
}

}  // namespace patterns

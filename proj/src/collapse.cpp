#include "patterns/collapse.hpp"

#include <algorithm>
#include <sstream>

#include "patterns/sigma.hpp"

namespace patterns {

namespace {

void sort_entries(const Dilator& d, std::vector<CollapseEntry>& es) {
  std::sort(es.begin(), es.end(),
            [&](const CollapseEntry& a, const CollapseEntry& b) { return term_compare(d, a.gamma, b.gamma) < 0; });
  es.erase(std::unique(es.begin(), es.end(),
                       [](const CollapseEntry& a, const CollapseEntry& b) { return a.gamma == b.gamma; }),
           es.end());
}

// supp(gamma) is contained in x: every argument lies below x.
bool supp_below(const Term& gamma, const ExtendedBase& x) {
  return std::all_of(gamma.args.begin(), gamma.args.end(), [&](const ExtendedBase& a) { return a < x; });
}

std::string supp_text(const Term& gamma) {
  std::string s = "{";
  for (std::size_t i = 0; i < gamma.args.size(); ++i) s += (i ? ", " : "") + render(gamma.args[i]);
  return s + "}";
}

// Value of a representation as an extended ordinal. Identity needs no
// closed form, which lets it run over Omega-bases.
ExtendedBase value_of(const Dilator& e, const Representation& r) {
  if (e.kind() == Dilator::Kind::identity && r.args.size() == 1 && r.sigma.is_zero()) return r.args[0];
  return repr_value(e, r);
}

}  // namespace

bool ResemblanceOracle::query(const ExtendedBase& delta, const Representation& t) {
  auto key = std::make_pair(render(delta), render(t));
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  bool v = answer(delta, t);
  memo_.emplace(std::move(key), v);
  return v;
}

TableOracle::TableOracle(const Dilator& d, Leq1Table table) : sigma_(Dilator::sigma(d)), table_(std::move(table)) {
  if (table_.structure().dilator.describe() != sigma_.describe())
    throw std::invalid_argument("table oracle: table is over " + table_.structure().dilator.describe() + ", expected " +
                                sigma_.describe());
}

std::optional<std::vector<ExtendedBase>> TableOracle::default_range() const {
  std::vector<ExtendedBase> r(table_.universe().begin(), table_.universe().end());
  return r;
}

std::vector<ExtendedBase> TableOracle::answerable_range(const ExtendedBase& alpha,
                                                        const std::vector<Term>& truncation) const {
  const Dilator& d = sigma_.child(0);
  std::vector<ExtendedBase> out;
  for (const auto& delta : table_.universe()) {
    if (!(ExtendedBase(delta) < alpha)) break;
    bool ok = true;
    for (const auto& g : truncation) {
      Representation x = xi_repr(d, alpha, g);
      if (ExtendedBase(delta) < star(sigma_, x)) continue;
      try {
        Ordinal v = repr_value(sigma_, substitute_last(sigma_, x, delta));
        if (!(delta.is_finite() && v.is_finite()) && !table_.index_of(v)) ok = false;
      } catch (const DilatorError&) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(delta);
  }
  return out;
}

bool TableOracle::answer(const ExtendedBase& delta, const Representation& t) {
  if (!delta.is_plain()) throw OracleError("table oracle: " + render(delta) + " is not an ordinal of the table");
  Ordinal v;
  try {
    v = repr_value(sigma_, t);
  } catch (const DilatorError& e) {
    throw OracleError(std::string("table oracle: ") + e.what());
  }
  // Finite pairs are decided exactly even off the universe.
  if (!(delta.as_plain().is_finite() && v.is_finite()) && (!table_.index_of(delta.as_plain()) || !table_.index_of(v)))
    throw OracleError("table oracle: pair (" + render(delta) + ", " + render(v) + ") leaves the universe");
  return table_.holds(delta.as_plain(), v);
}

std::unique_ptr<ResemblanceOracle> star_fixture(const Dilator& d) {
  Dilator s = Dilator::sigma(d);
  return std::make_unique<FixtureOracle>(
      "star", [s](const ExtendedBase& delta, const Representation& t) { return delta == star(s, t); });
}

std::vector<Term> finite_truncation(const Dilator& d, const ExtendedBase& alpha, std::uint64_t n) {
  if (alpha < ExtendedBase::nat(n)) throw std::invalid_argument("truncation bound exceeds alpha");
  std::vector<Term> out;
  for (auto t : enumerate_terms(d, Ordinal::nat(n))) {
    t.base = alpha;
    out.push_back(std::move(t));
  }
  return out;
}

CollapseTable normal_collapse(const Dilator& e, const ExtendedBase& lambda, const std::vector<Term>& truncation) {
  if (!e.has_normality()) throw DilatorError("normal_collapse: " + e.describe() + " carries no normality data");
  if (classify(lambda) != OrdKind::limit) throw DilatorError("normal_collapse: " + render(lambda) + " is not a limit");
  if (e.kind() != Dilator::Kind::identity) {
    ExtendedBase fixed;
    try {
      fixed = value_of(e, e_point(e, lambda));
    } catch (const std::exception& ex) {
      throw DilatorError("normal_collapse: cannot check E(" + render(lambda) + ") = " + render(lambda) + ": " + ex.what());
    }
    if (fixed != lambda)
      throw DilatorError("normal_collapse: E(" + render(lambda) + ") = " + render(fixed) + ", not a fixed point");
  }
  CollapseTable out{e, lambda, {}, Provenance::constructed_normal};
  for (const auto& g : truncation) {
    if (g.base != lambda) throw DilatorError("normal_collapse: term " + render(g) + " is not over " + render(lambda));
    check_term(e, g);
    ExtendedBase v = value_of(e, representation(e, g));
    out.entries.push_back({g, value_of(e, e_point(e, succ(v)))});
  }
  sort_entries(e, out.entries);
  return out;
}

Representation xi_repr(const Dilator& d, const ExtendedBase& alpha, const Term& gamma) {
  Term x = xi_embed(d, alpha, gamma);
  return Representation{x.sigma, x.args};
}

CollapseTable build_collapse(const Dilator& d, const ExtendedBase& alpha, ResemblanceOracle& oracle,
                             const std::vector<Term>& truncation, std::optional<std::vector<ExtendedBase>> range) {
  if (!range) range = oracle.default_range();
  if (!range) throw std::invalid_argument("build_collapse: no search range and the oracle supplies none");
  std::sort(range->begin(), range->end());
  Dilator s = Dilator::sigma(d);
  CollapseTable out{d, alpha, {}, Provenance::constructed_oracle};
  for (const auto& g : truncation) {
    Representation x = xi_repr(d, alpha, g);
    ExtendedBase lo = star(s, x);
    CollapseEntry e{g, std::nullopt};
    for (const auto& delta : *range) {
      if (!(delta < alpha)) break;
      if (delta < lo) continue;
      if (oracle.query(delta, substitute_last(s, x, delta))) {
        e.theta = delta;
        break;
      }
    }
    out.entries.push_back(std::move(e));
  }
  sort_entries(d, out.entries);
  return out;
}

bool CollapseReport::violates(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const CollapseViolation& v) { return v.condition == condition; });
}

CollapseReport validate_collapse(const Dilator& d, const CollapseTable& table) {
  CollapseReport r;
  std::vector<const CollapseEntry*> live;
  for (const auto& e : table.entries) {
    if (e.gamma.base != table.alpha) {
      r.violations.push_back({"domain", e.gamma, std::nullopt, "base " + render(e.gamma.base), "alpha " + render(table.alpha)});
      continue;
    }
    try {
      check_term(d, e.gamma);
    } catch (const DilatorError& ex) {
      r.violations.push_back({"domain", e.gamma, std::nullopt, "invalid term", ex.what()});
      continue;
    }
    if (!e.theta) {
      ++r.unresolved;
      continue;
    }
    ++r.entries;
    live.push_back(&e);
    if (!(*e.theta < table.alpha))
      r.violations.push_back({"range", e.gamma, std::nullopt, "theta = " + render(*e.theta), "alpha = " + render(table.alpha)});
    if (!supp_below(e.gamma, *e.theta))
      r.violations.push_back({"b", e.gamma, std::nullopt, "supp = " + supp_text(e.gamma), "theta = " + render(*e.theta)});
  }
  std::sort(live.begin(), live.end(),
            [&](const CollapseEntry* a, const CollapseEntry* b) { return term_compare(d, a->gamma, b->gamma) < 0; });
  for (std::size_t i = 0; i < live.size(); ++i)
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      const auto& g = *live[i];
      const auto& h = *live[j];
      if (g.gamma == h.gamma) continue;
      ++r.pairs;
      if (supp_below(g.gamma, *h.theta) && !(*g.theta < *h.theta))
        r.violations.push_back({"a", g.gamma, h.gamma, "theta(gamma) = " + render(*g.theta),
                                "theta(delta) = " + render(*h.theta)});
    }
  return r;
}

std::string render_text(const CollapseReport& r) {
  std::ostringstream o;
  o << (r.valid() ? "VALID" : "INVALID") << " entries=" << r.entries << " pairs=" << r.pairs
    << " unresolved=" << r.unresolved << " violations=" << r.violations.size() << "\n";
  for (const auto& v : r.violations) {
    o << "COUNTEREXAMPLE BEGIN\n";
    o << "condition: " << v.condition << "\n";
    o << "gamma: " << render(v.gamma) << "\n";
    if (v.delta) o << "delta: " << render(*v.delta) << "\n";
    o << "lhs: " << v.lhs << "\n";
    o << "rhs: " << v.rhs << "\n";
    o << "COUNTEREXAMPLE END\n";
  }
  return o.str();
}

Report audit_build(const Dilator& d, const CollapseTable& table, ResemblanceOracle& oracle,
                   const std::vector<ExtendedBase>& range) {
  Dilator s = Dilator::sigma(d);
  Report rep{"collapse build " + d.describe() + " at " + render(table.alpha), {}};
  LawResult minimal{"minimality", true, true, 0, std::nullopt, ""};
  LawResult chain{"support-chain", true, true, 0, std::nullopt, ""};
  auto fail = [](LawResult& l, const CollapseEntry& e, std::vector<std::pair<std::string, std::string>> fields) {
    if (!l.passed) return;
    l.passed = false;
    l.counterexample = Counterexample{render(e.gamma), std::move(fields)};
  };
  auto sorted = range;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : table.entries) {
    Representation x = xi_repr(d, table.alpha, e.gamma);
    ExtendedBase lo = star(s, x);
    ++minimal.checked;
    for (const auto& delta : sorted) {
      if (!(delta < table.alpha) || (e.theta && !(delta < *e.theta))) break;
      if (delta < lo) continue;
      if (oracle.query(delta, substitute_last(s, x, delta))) {
        fail(minimal, e, {{"smaller-witness", render(delta)}, {"theta", e.theta ? render(*e.theta) : "none"}});
        break;
      }
    }
    if (!e.theta) continue;
    ++chain.checked;
    if (!supp_below(e.gamma, lo)) fail(chain, e, {{"supp", supp_text(e.gamma)}, {"xi-star", render(lo)}});
    if (*e.theta < lo) fail(chain, e, {{"xi-star", render(lo)}, {"theta", render(*e.theta)}});
  }
  rep.laws.push_back(std::move(minimal));
  rep.laws.push_back(std::move(chain));
  return rep;
}

std::string render_tsv(const CollapseTable& t) {
  std::string out = "term\tordinal\n";
  for (const auto& e : t.entries) out += render(e.gamma) + "\t" + (e.theta ? render(*e.theta) : "none") + "\n";
  return out;
}

CollapseTable parse_collapse_tsv(const Dilator& d, std::string_view text) {
  CollapseTable t{d, ExtendedBase(), {}, Provenance::user_supplied};
  std::size_t pos = 0, line_no = 0;
  bool have_alpha = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    std::size_t start = pos;
    pos = end + 1;
    if (line_no++ == 0) {
      if (line != "term\tordinal") throw ParseError("expected header \"term<TAB>ordinal\"", start);
      continue;
    }
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError("expected a TAB", start + line.size());
    CollapseEntry e;
    try {
      e.gamma = parse_term(line.substr(0, tab));
    } catch (const ParseError& ex) {
      throw ParseError(ex.what(), start + ex.position());
    }
    auto rhs = line.substr(tab + 1);
    if (rhs != "none") {
      try {
        e.theta = parse_extended(rhs);
      } catch (const ParseError& ex) {
        throw ParseError(ex.what(), start + tab + 1 + ex.position());
      }
    }
    if (!have_alpha) {
      t.alpha = e.gamma.base;
      have_alpha = true;
    } else if (e.gamma.base != t.alpha) {
      throw ParseError("all terms must share one base", start);
    }
    t.entries.push_back(std::move(e));
  }
  if (line_no == 0) throw ParseError("empty collapse table", 0);
  return t;
}

}  // namespace patterns

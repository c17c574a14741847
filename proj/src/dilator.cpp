#include "patterns/dilator.hpp"

#include <algorithm>
#include <set>

namespace patterns {

// ---------------------------------------------------------------------------
// Finite-order combinatorics.

Morphism identity_map(int n) {
  Morphism f{n, n, {}};
  for (int i = 0; i < n; ++i) f.map.push_back(i);
  return f;
}

Morphism coface(int n, int i) {
  if (i < 0 || i > n) throw std::invalid_argument("coface index out of range");
  Morphism f{n, n + 1, {}};
  for (int j = 0; j < n; ++j) f.map.push_back(j < i ? j : j + 1);
  return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.cod != g.dom) throw std::invalid_argument("compose: codomain/domain mismatch");
  Morphism h{f.dom, g.cod, {}};
  for (int x : f.map) h.map.push_back(g(x));
  return h;
}

Morphism enumerate(const std::vector<int>& subset, int n) {
  Morphism f{static_cast<int>(subset.size()), n, subset};
  check_morphism(f);
  return f;
}

void check_morphism(const Morphism& f) {
  if (static_cast<int>(f.map.size()) != f.dom) throw std::invalid_argument("morphism size does not match domain");
  for (int i = 0; i < f.dom; ++i) {
    if (f.map[i] < 0 || f.map[i] >= f.cod) throw std::invalid_argument("morphism value out of range");
    if (i > 0 && f.map[i] <= f.map[i - 1]) throw std::invalid_argument("morphism not strictly increasing");
  }
}

std::vector<std::pair<int, int>> coface_decomposition(const Morphism& f, bool descending) {
  check_morphism(f);
  std::vector<int> gaps;
  std::size_t j = 0;
  for (int x = 0; x < f.cod; ++x) {
    if (j < f.map.size() && f.map[j] == x) {
      ++j;
    } else {
      gaps.push_back(x);
    }
  }
  std::vector<std::pair<int, int>> steps;
  int n = f.dom;
  int r = static_cast<int>(gaps.size());
  if (!descending) {
    for (int g : gaps) steps.emplace_back(n++, g);
  } else {
    // A gap inserted now is pushed up by every smaller gap inserted later.
    for (int k = r - 1; k >= 0; --k) steps.emplace_back(n++, gaps[k] - k);
  }
  return steps;
}

std::vector<Morphism> all_morphisms(int m, int n) {
  std::vector<Morphism> out;
  if (m > n || m < 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) cur[i] = i;
  while (true) {
    out.push_back(Morphism{m, n, cur});
    int i = m - 1;
    while (i >= 0 && cur[i] == n - m + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int k = i + 1; k < m; ++k) cur[k] = cur[k - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dilator nodes.

struct Dilator::Node {
  Kind kind;
  Ordinal nu;
  FiniteTable table;
  std::vector<Dilator> kids;
};

Dilator Dilator::constant(Ordinal nu) { return Dilator(std::make_shared<const Node>(Node{Kind::constant, std::move(nu), {}, {}})); }
Dilator Dilator::identity() { return Dilator(std::make_shared<const Node>(Node{Kind::identity, {}, {}, {}})); }
Dilator Dilator::sum(const Dilator& a, const Dilator& b) {
  return Dilator(std::make_shared<const Node>(Node{Kind::sum, {}, {}, {a, b}}));
}
Dilator Dilator::sigma(const Dilator& d) { return Dilator(std::make_shared<const Node>(Node{Kind::sigma, {}, {}, {d}})); }

Dilator Dilator::table(FiniteTable t) {
  auto bad = [](const std::string& m) { throw DilatorError("malformed table: " + m); };
  if (t.bound < 0) bad("negative bound");
  auto N = static_cast<std::size_t>(t.bound);
  if (t.values.size() != N + 1) bad("values must list D(0..bound)");
  if (t.cofaces.size() != N) bad("cofaces must cover n < bound");
  for (std::size_t n = 0; n < N; ++n) {
    if (t.cofaces[n].size() != n + 1) bad("cofaces for n=" + std::to_string(n) + " must cover i <= n");
    for (const auto& row : t.cofaces[n]) {
      if (row.size() != t.values[n]) bad("coface row size differs from D(" + std::to_string(n) + ")");
      for (auto v : row)
        if (v >= t.values[n + 1]) bad("coface value outside D(" + std::to_string(n + 1) + ")");
    }
  }
  if (t.supports.size() != N + 1) bad("supports must cover n <= bound");
  for (std::size_t n = 0; n <= N; ++n) {
    if (t.supports[n].size() != t.values[n]) bad("support list size differs from D(" + std::to_string(n) + ")");
    for (const auto& s : t.supports[n])
      for (std::size_t k = 0; k < s.size(); ++k)
        if (s[k] < 0 || static_cast<std::size_t>(s[k]) >= n || (k > 0 && s[k] <= s[k - 1]))
          bad("support entries must be ascending indices below n");
  }
  if (t.mu) {
    if (t.mu->size() != N + 1) bad("mu must cover n <= bound");
    for (std::size_t n = 0; n <= N; ++n)
      if ((*t.mu)[n].size() != n) bad("mu[" + std::to_string(n) + "] must have n entries");
  }
  return Dilator(std::make_shared<const Node>(Node{Kind::table, {}, std::move(t), {}}));
}

Dilator::Kind Dilator::kind() const { return node_->kind; }
const Dilator& Dilator::child(std::size_t i) const { return node_->kids.at(i); }
const Ordinal& Dilator::const_value() const { return node_->nu; }
const FiniteTable& Dilator::table_data() const { return node_->table; }

std::optional<int> Dilator::bound() const {
  switch (kind()) {
    case Kind::table: return node_->table.bound;
    case Kind::constant:
    case Kind::identity: return std::nullopt;
    case Kind::sum: {
      auto a = child(0).bound(), b = child(1).bound();
      if (!a) return b;
      if (!b) return a;
      return std::min(*a, *b);
    }
    case Kind::sigma: {
      auto a = child(0).bound();
      if (!a) return std::nullopt;
      return *a + 1;
    }
  }
  return std::nullopt;
}

void check_arity(const Dilator& d, int n) {
  if (n < 0) throw DilatorError("negative arity");
  auto b = d.bound();
  if (b && n > *b)
    throw DilatorError("arity " + std::to_string(n) + " exceeds presentation bound " + std::to_string(*b));
}

Ordinal Dilator::value(int n) const {
  check_arity(*this, n);
  switch (kind()) {
    case Kind::table: return Ordinal::nat(node_->table.values[static_cast<std::size_t>(n)]);
    case Kind::constant: return node_->nu;
    case Kind::identity: return Ordinal::nat(static_cast<std::uint64_t>(n));
    case Kind::sum: return child(0).value(n) + child(1).value(n);
    case Kind::sigma: return sigma_value(n);
  }
  return {};
}

Ordinal Dilator::sigma_value(int n) const {
  if (kind() != Kind::sigma) throw DilatorError("sigma_value on a non-sigma dilator");
  Ordinal acc;
  for (int k = 0; k < n; ++k) acc = acc + Ordinal::nat(1) + child(0).value(k);
  return acc;
}

std::pair<int, std::optional<Ordinal>> Dilator::sigma_decompose(int n, const Ordinal& alpha) const {
  if (kind() != Kind::sigma) throw DilatorError("sigma_decompose on a non-sigma dilator");
  Ordinal start;
  for (int k = 0; k < n; ++k) {
    Ordinal next = start + Ordinal::nat(1) + child(0).value(k);
    if (alpha < next) {
      if (alpha == start) return {k, std::nullopt};
      return {k, left_subtract(start + Ordinal::nat(1), alpha)};
    }
    start = next;
  }
  throw DilatorError("element " + render(alpha) + " not in SigmaD(" + std::to_string(n) + ")");
}

namespace {

void require_member(const Dilator& d, int n, const Ordinal& sigma) {
  if (!d.contains(n, sigma))
    throw DilatorError("element " + render(sigma) + " not in D(" + std::to_string(n) + ") = " + render(d.value(n)));
}

Morphism restrict_below(const Morphism& f, int k) {
  Morphism g{k, f(k), {}};
  for (int i = 0; i < k; ++i) g.map.push_back(f(i));
  return g;
}

}  // namespace

Ordinal Dilator::apply_coface(int n, int i, const Ordinal& sigma) const {
  if (kind() == Kind::table) {
    check_arity(*this, n + 1);
    require_member(*this, n, sigma);
    const auto& row = node_->table.cofaces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    return Ordinal::nat(row[sigma.to_nat()]);
  }
  return apply(coface(n, i), sigma);
}

Ordinal Dilator::apply(const Morphism& f, const Ordinal& sigma) const {
  check_morphism(f);
  check_arity(*this, f.cod);
  require_member(*this, f.dom, sigma);
  switch (kind()) {
    case Kind::table: {
      Ordinal cur = sigma;
      for (auto [n, i] : coface_decomposition(f)) cur = apply_coface(n, i, cur);
      return cur;
    }
    case Kind::constant: return sigma;
    case Kind::identity: return Ordinal::nat(static_cast<std::uint64_t>(f(static_cast<int>(sigma.to_nat()))));
    case Kind::sum: {
      Ordinal left = child(0).value(f.dom);
      if (sigma < left) return child(0).apply(f, sigma);
      return child(0).value(f.cod) + child(1).apply(f, left_subtract(left, sigma));
    }
    case Kind::sigma: {
      auto [k, beta] = sigma_decompose(f.dom, sigma);
      Ordinal head = sigma_value(f(k));
      if (!beta) return head;
      return head + Ordinal::nat(1) + child(0).apply(restrict_below(f, k), *beta);
    }
  }
  return {};
}

std::vector<int> Dilator::support(int n, const Ordinal& sigma) const {
  check_arity(*this, n);
  require_member(*this, n, sigma);
  switch (kind()) {
    case Kind::table: return node_->table.supports[static_cast<std::size_t>(n)][sigma.to_nat()];
    case Kind::constant: return {};
    case Kind::identity: return {static_cast<int>(sigma.to_nat())};
    case Kind::sum: {
      Ordinal left = child(0).value(n);
      if (sigma < left) return child(0).support(n, sigma);
      return child(1).support(n, left_subtract(left, sigma));
    }
    case Kind::sigma: {
      auto [k, beta] = sigma_decompose(n, sigma);
      std::vector<int> s;
      if (beta) s = child(0).support(k, *beta);
      s.push_back(k);
      return s;
    }
  }
  return {};
}

std::optional<Ordinal> Dilator::preimage(const Morphism& f, const Ordinal& sigma) const {
  check_morphism(f);
  check_arity(*this, f.cod);
  require_member(*this, f.cod, sigma);
  switch (kind()) {
    case Kind::table: {
      std::uint64_t m = node_->table.values[static_cast<std::size_t>(f.dom)];
      for (std::uint64_t t = 0; t < m; ++t)
        if (apply(f, Ordinal::nat(t)) == sigma) return Ordinal::nat(t);
      return std::nullopt;
    }
    case Kind::constant: return sigma;
    case Kind::identity: {
      auto x = static_cast<int>(sigma.to_nat());
      auto it = std::find(f.map.begin(), f.map.end(), x);
      if (it == f.map.end()) return std::nullopt;
      return Ordinal::nat(static_cast<std::uint64_t>(it - f.map.begin()));
    }
    case Kind::sum: {
      Ordinal left = child(0).value(f.cod);
      if (sigma < left) return child(0).preimage(f, sigma);
      auto r = child(1).preimage(f, left_subtract(left, sigma));
      if (!r) return std::nullopt;
      return child(0).value(f.dom) + *r;
    }
    case Kind::sigma: {
      auto [j, beta] = sigma_decompose(f.cod, sigma);
      auto it = std::find(f.map.begin(), f.map.end(), j);
      if (it == f.map.end()) return std::nullopt;
      int k = static_cast<int>(it - f.map.begin());
      if (!beta) return sigma_value(k);
      auto r = child(0).preimage(restrict_below(f, k), *beta);
      if (!r) return std::nullopt;
      return sigma_value(k) + Ordinal::nat(1) + *r;
    }
  }
  return std::nullopt;
}

bool Dilator::has_normality() const {
  switch (kind()) {
    case Kind::table: return node_->table.mu.has_value();
    case Kind::constant: return false;
    case Kind::identity:
    case Kind::sigma: return true;
    case Kind::sum: return child(0).kind() == Kind::constant && child(1).has_normality();
  }
  return false;
}

Ordinal Dilator::mu(int n, int k) const {
  if (!has_normality()) throw DilatorError(describe() + " carries no normality data");
  if (k < 0 || k >= n) throw DilatorError("mu index out of range");
  check_arity(*this, n);
  switch (kind()) {
    case Kind::table: return Ordinal::nat((*node_->table.mu)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]);
    case Kind::identity: return Ordinal::nat(static_cast<std::uint64_t>(k));
    case Kind::sigma: return sigma_value(k);
    case Kind::sum: return child(0).const_value() + child(1).mu(n, k);
    case Kind::constant: break;
  }
  throw DilatorError("no normality data");
}

std::optional<NormalityData> Dilator::normality(int b) const {
  if (!has_normality()) return std::nullopt;
  NormalityData d;
  for (int n = 0; n <= b; ++n) {
    d.mu.emplace_back();
    for (int k = 0; k < n; ++k) d.mu.back().push_back(mu(n, k));
  }
  return d;
}

std::string Dilator::describe() const {
  switch (kind()) {
    case Kind::table: return "table(bound=" + std::to_string(node_->table.bound) + ")";
    case Kind::constant: return "const(" + render(node_->nu) + ")";
    case Kind::identity: return "identity";
    case Kind::sum: return "sum(" + child(0).describe() + "," + child(1).describe() + ")";
    case Kind::sigma: return "sigma(" + child(0).describe() + ")";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Fibers and traces.

std::optional<std::vector<Ordinal>> enumerate_fiber(const Dilator& d, int n) {
  Ordinal v = d.value(n);
  if (!v.is_finite()) return std::nullopt;
  std::vector<Ordinal> out;
  for (std::uint64_t i = 0; i < v.to_nat(); ++i) out.push_back(Ordinal::nat(i));
  return out;
}

std::vector<TraceElement> enumerate_trace(const Dilator& d, int bound) {
  std::vector<TraceElement> out;
  for (int n = 0; n <= bound; ++n) {
    auto fiber = enumerate_fiber(d, n);
    if (!fiber) throw DilatorError("infinite fiber D(" + std::to_string(n) + ") = " + render(d.value(n)));
    for (const auto& s : *fiber)
      if (static_cast<int>(d.support(n, s).size()) == n) out.push_back({s, n});
  }
  return out;
}

namespace {

Ordinal random_below_power(const Ordinal& e, std::mt19937_64& rng, int depth) {
  if (e.is_zero() || depth > 3) return {};
  if (rng() % 4 == 0) return {};
  if (e.is_finite() && e.to_nat() == 1) return Ordinal::nat(rng() % 64);
  Ordinal e1 = sample_below(e, rng);
  Ordinal head = Ordinal::omega_pow(e1, 1 + rng() % 3);
  return head + random_below_power(e1, rng, depth + 1);
}

}  // namespace

Ordinal sample_below(const Ordinal& x, std::mt19937_64& rng) {
  if (x.is_zero()) throw std::invalid_argument("nothing below zero");
  if (x.is_finite()) return Ordinal::nat(rng() % x.to_nat());
  const auto& ts = x.terms();
  std::size_t i = rng() % ts.size();
  std::vector<Ordinal::Term> prefix(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(i));
  Ordinal acc = Ordinal::from_terms(prefix);
  std::uint64_t c = rng() % ts[i].coeff;
  if (c > 0) acc = acc + Ordinal::omega_pow(*ts[i].exp, c);
  return acc + random_below_power(*ts[i].exp, rng, 0);
}

std::vector<Ordinal> sample_fiber(const Dilator& d, int n, std::mt19937_64& rng, std::size_t count) {
  if (auto f = enumerate_fiber(d, n)) return *f;
  Ordinal v = d.value(n);
  std::set<Ordinal> picks;
  for (std::uint64_t i = 0; i < count / 2; ++i) picks.insert(Ordinal::nat(i));
  for (std::size_t tries = 0; picks.size() < count && tries < 64 * count; ++tries) picks.insert(sample_below(v, rng));
  return {picks.begin(), picks.end()};
}

// ---------------------------------------------------------------------------
// Validators.

namespace {

std::string show_set(const std::vector<int>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string show_map(const Morphism& f) {
  std::string out = std::to_string(f.dom) + "->" + std::to_string(f.cod) + " [";
  for (std::size_t i = 0; i < f.map.size(); ++i) out += (i ? "," : "") + std::to_string(f.map[i]);
  return out + "]";
}

struct Fibers {
  std::vector<std::vector<Ordinal>> elems;
  std::vector<bool> finite;
  bool all_finite = true;
};

Fibers collect_fibers(const Dilator& d, int bound, std::uint64_t seed) {
  Fibers f;
  std::mt19937_64 rng(seed);
  for (int n = 0; n <= bound; ++n) {
    auto e = enumerate_fiber(d, n);
    f.finite.push_back(e.has_value());
    if (!e) f.all_finite = false;
    f.elems.push_back(e ? *e : sample_fiber(d, n, rng, 24));
  }
  return f;
}

template <class Fn>
void run_law(Report& r, const std::string& name, bool exhaustive, Fn&& body) {
  LawResult l;
  l.law = name;
  l.exhaustive = exhaustive;
  try {
    body(l);
  } catch (const std::exception& e) {
    l.passed = false;
    l.counterexample = Counterexample{"evaluation error", {{"error", e.what()}}};
  }
  r.laws.push_back(std::move(l));
}

void fail(LawResult& l, std::string loc, std::vector<std::pair<std::string, std::string>> fields) {
  if (!l.passed) return;
  l.passed = false;
  l.counterexample = Counterexample{std::move(loc), std::move(fields)};
}

}  // namespace

Report validate_predilator(const Dilator& d, int bound, std::uint64_t seed) {
  Report r;
  r.subject = d.describe() + " predilator laws, bound " + std::to_string(bound);
  auto b = d.bound();
  if (b && bound > *b) {
    LawResult l;
    l.law = "presentation-bound";
    l.passed = false;
    l.counterexample = Counterexample{"bound", {{"requested", std::to_string(bound)}, {"available", std::to_string(*b)}}};
    r.laws.push_back(l);
    return r;
  }
  Fibers F = collect_fibers(d, bound, seed);
  bool ex = F.all_finite;

  run_law(r, "coface-monotone", ex, [&](LawResult& l) {
    for (int n = 0; n < bound && l.passed; ++n)
      for (int i = 0; i <= n && l.passed; ++i) {
        const auto& E = F.elems[n];
        for (std::size_t s = 0; s < E.size() && l.passed; ++s) {
          ++l.checked;
          Ordinal img = d.apply_coface(n, i, E[s]);
          if (!d.contains(n + 1, img))
            fail(l, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " sigma=" + render(E[s]),
                 {{"image", render(img)}, {"reason", "image outside D(n+1)"}});
          if (s + 1 < E.size() && !(img < d.apply_coface(n, i, E[s + 1])))
            fail(l, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " sigma=" + render(E[s]),
                 {{"next", render(E[s + 1])}, {"reason", "coface action not strictly increasing"}});
        }
      }
  });

  run_law(r, "simplicial-identities", ex, [&](LawResult& l) {
    for (int n = 0; n + 2 <= bound && l.passed; ++n)
      for (int j = 1; j <= n + 1 && l.passed; ++j)
        for (int i = 0; i < j && l.passed; ++i)
          for (const auto& s : F.elems[n]) {
            ++l.checked;
            Ordinal lhs = d.apply_coface(n + 1, j, d.apply_coface(n, i, s));
            Ordinal rhs = d.apply_coface(n + 1, i, d.apply_coface(n, j - 1, s));
            if (lhs != rhs) {
              fail(l, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" + std::to_string(j) + " sigma=" + render(s),
                   {{"d_j.d_i", render(lhs)}, {"d_i.d_(j-1)", render(rhs)}});
              break;
            }
          }
  });

  run_law(r, "decomposition-independence", ex, [&](LawResult& l) {
    for (int n = 0; n <= bound && l.passed; ++n)
      for (int m = 0; m <= n && l.passed; ++m)
        for (const auto& f : all_morphisms(m, n)) {
          if (!l.passed) break;
          for (const auto& s : F.elems[m]) {
            ++l.checked;
            Ordinal a = s, c = s;
            for (auto [k, i] : coface_decomposition(f, false)) a = d.apply_coface(k, i, a);
            for (auto [k, i] : coface_decomposition(f, true)) c = d.apply_coface(k, i, c);
            if (a != c) {
              fail(l, "f=" + show_map(f) + " sigma=" + render(s), {{"ascending", render(a)}, {"descending", render(c)}});
              break;
            }
          }
        }
  });

  run_law(r, "support-range", ex, [&](LawResult& l) {
    for (int n = 0; n <= bound && l.passed; ++n)
      for (const auto& s : F.elems[n]) {
        ++l.checked;
        auto sp = d.support(n, s);
        bool ok = true;
        for (std::size_t k = 0; k < sp.size(); ++k)
          if (sp[k] < 0 || sp[k] >= n || (k > 0 && sp[k] <= sp[k - 1])) ok = false;
        if (!ok) {
          fail(l, "n=" + std::to_string(n) + " sigma=" + render(s), {{"support", show_set(sp)}});
          break;
        }
      }
  });

  run_law(r, "support-naturality", ex, [&](LawResult& l) {
    for (int n = 0; n < bound && l.passed; ++n)
      for (int i = 0; i <= n && l.passed; ++i)
        for (const auto& s : F.elems[n]) {
          ++l.checked;
          auto before = d.support(n, s);
          for (auto& x : before) x = x < i ? x : x + 1;
          Ordinal img = d.apply_coface(n, i, s);
          auto after = d.support(n + 1, img);
          if (after != before) {
            fail(l, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " sigma=" + render(s),
                 {{"image", render(img)}, {"supp(image)", show_set(after)}, {"delta_i[supp(sigma)]", show_set(before)}});
            break;
          }
        }
  });

  run_law(r, "support-condition", ex, [&](LawResult& l) {
    for (int n = 0; n <= bound && l.passed; ++n)
      for (int m = 0; m <= n && l.passed; ++m)
        for (const auto& f : all_morphisms(m, n)) {
          if (!l.passed) break;
          std::set<Ordinal> image;
          if (F.finite[m])
            for (const auto& t : F.elems[m]) image.insert(d.apply(f, t));
          for (const auto& s : F.elems[n]) {
            auto sp = d.support(n, s);
            bool inside = std::all_of(sp.begin(), sp.end(),
                                      [&](int x) { return std::binary_search(f.map.begin(), f.map.end(), x); });
            if (!inside) continue;
            ++l.checked;
            bool hit;
            if (F.finite[m]) {
              hit = image.count(s) > 0;
            } else {
              auto p = d.preimage(f, s);
              hit = p && d.apply(f, *p) == s;
            }
            if (!hit) {
              fail(l, "sigma=" + render(s) + " f=" + show_map(f),
                   {{"supp(sigma)", show_set(sp)}, {"reason", "supp(sigma) inside rng(f) but sigma not in rng(D(f))"}});
              break;
            }
          }
        }
  });
  return r;
}

Report validate_normality(const Dilator& d, const std::optional<NormalityData>& mu, int bound) {
  Report r;
  r.subject = d.describe() + " normality, bound " + std::to_string(bound);
  {
    LawResult l;
    l.law = "normality-data";
    if (!mu) {
      l.passed = false;
      l.counterexample = Counterexample{"mu", {{"reason", "no normality data"}}};
    } else if (static_cast<int>(mu->mu.size()) <= bound) {
      l.passed = false;
      l.counterexample = Counterexample{"mu", {{"reason", "mu does not cover the bound"}}};
    }
    l.checked = 1;
    r.laws.push_back(l);
    if (!l.passed) return r;
  }
  auto b = d.bound();
  if (b && bound > *b) {
    LawResult l;
    l.law = "presentation-bound";
    l.passed = false;
    l.counterexample = Counterexample{"bound", {{"requested", std::to_string(bound)}, {"available", std::to_string(*b)}}};
    r.laws.push_back(l);
    return r;
  }
  Fibers F = collect_fibers(d, bound, 7);
  bool ex = F.all_finite;
  const auto& M = mu->mu;
  auto at = [&](int n, int k) -> const Ordinal& { return M[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]; };
  auto loc = [](int n, int k) { return "n=" + std::to_string(n) + " k=" + std::to_string(k); };

  run_law(r, "mu-monotone", true, [&](LawResult& l) {
    for (int n = 0; n <= bound && l.passed; ++n)
      for (int k = 0; k < n; ++k) {
        ++l.checked;
        if (!d.contains(n, at(n, k))) {
          fail(l, loc(n, k), {{"mu", render(at(n, k))}, {"reason", "mu_n(k) outside D(n)"}});
          break;
        }
        if (k > 0 && !(at(n, k - 1) < at(n, k))) {
          fail(l, loc(n, k), {{"mu_n(k-1)", render(at(n, k - 1))}, {"mu_n(k)", render(at(n, k))}});
          break;
        }
      }
  });
  if (!r.laws.back().passed) return r;

  run_law(r, "mu-naturality", true, [&](LawResult& l) {
    for (int n = 0; n < bound && l.passed; ++n)
      for (int i = 0; i <= n && l.passed; ++i)
        for (int k = 0; k < n; ++k) {
          ++l.checked;
          Ordinal lhs = d.apply_coface(n, i, at(n, k));
          int dk = k < i ? k : k + 1;
          if (lhs != at(n + 1, dk)) {
            fail(l, loc(n, k) + " i=" + std::to_string(i), {{"D(delta_i)(mu_n(k))", render(lhs)}, {"mu_(n+1)(delta_i(k))", render(at(n + 1, dk))}});
            break;
          }
        }
  });

  run_law(r, "normality-condition", ex, [&](LawResult& l) {
    for (int n = 0; n <= bound && l.passed; ++n)
      for (int k = 0; k < n && l.passed; ++k)
        for (const auto& s : F.elems[n]) {
          ++l.checked;
          auto sp = d.support(n, s);
          bool below = s < at(n, k);
          bool inside = sp.empty() || sp.back() < k;
          if (below != inside) {
            fail(l, loc(n, k) + " sigma=" + render(s),
                 {{"mu_n(k)", render(at(n, k))}, {"sigma<mu_n(k)", below ? "true" : "false"},
                  {"supp(sigma)", show_set(sp)}, {"supp_in_k", inside ? "true" : "false"}});
            break;
          }
        }
  });

  run_law(r, "mu-trace", true, [&](LawResult& l) {
    if (bound < 1) {
      l.note = "bound < 1";
      return;
    }
    ++l.checked;
    auto sp = d.support(1, at(1, 0));
    if (sp != std::vector<int>{0}) fail(l, "n=1 k=0", {{"mu_1(0)", render(at(1, 0))}, {"support", show_set(sp)}});
  });
  return r;
}

FiniteTable tabulate(const Dilator& d, int bound) {
  FiniteTable t;
  t.bound = bound;
  for (int n = 0; n <= bound; ++n) {
    auto fiber = enumerate_fiber(d, n);
    if (!fiber) throw DilatorError("cannot tabulate infinite fiber D(" + std::to_string(n) + ")");
    t.values.push_back(fiber->size());
    t.supports.emplace_back();
    for (const auto& s : *fiber) t.supports.back().push_back(d.support(n, s));
    if (n < bound) {
      t.cofaces.emplace_back();
      for (int i = 0; i <= n; ++i) {
        t.cofaces.back().emplace_back();
        for (const auto& s : *fiber) t.cofaces.back().back().push_back(d.apply_coface(n, i, s).to_nat());
      }
    }
  }
  if (d.has_normality()) {
    t.mu.emplace();
    for (int n = 0; n <= bound; ++n) {
      t.mu->emplace_back();
      for (int k = 0; k < n; ++k) t.mu->back().push_back(d.mu(n, k).to_nat());
    }
  }
  return t;
}

}  // namespace patterns

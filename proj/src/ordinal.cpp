#include "patterns/ordinal.hpp"

#include <cctype>
#include <limits>

namespace patterns {

const char* to_string(OrdKind k) {
  switch (k) {
    case OrdKind::zero: return "zero";
    case OrdKind::successor: return "successor";
    case OrdKind::limit: return "limit";
  }
  return "?";
}

namespace {

const std::shared_ptr<const Ordinal>& zero_exp() {
  static const auto z = std::make_shared<const Ordinal>();
  return z;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("ordinal coefficient overflow");
  return a + b;
}

}  // namespace

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({zero_exp(), n});
  return o;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1)); }

Ordinal Ordinal::omega_pow(const Ordinal& e, std::uint64_t c) {
  Ordinal o;
  if (c > 0) o.terms_.push_back({e.is_zero() ? zero_exp() : std::make_shared<const Ordinal>(e), c});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0 || !terms[i].exp) throw std::invalid_argument("zero coefficient in CNF");
    if (i > 0 && compare(*terms[i - 1].exp, *terms[i].exp) != std::strong_ordering::greater)
      throw std::invalid_argument("CNF exponents must strictly decrease");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp->is_zero()); }

std::uint64_t Ordinal::to_nat() const {
  if (!is_finite()) throw std::domain_error("ordinal " + render(*this) + " is not finite");
  return terms_.empty() ? 0 : terms_[0].coeff;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].exp != y[i].exp) {
      auto c = compare(*x[i].exp, *y[i].exp);
      if (c != 0) return c;
    }
    if (x[i].coeff != y[i].coeff) return x[i].coeff <=> y[i].coeff;
  }
  return x.size() <=> y.size();
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.exponent(0);
  std::vector<Ordinal::Term> out;
  for (const auto& t : a.terms()) {
    auto c = compare(*t.exp, lead);
    if (c == std::strong_ordering::greater) {
      out.push_back(t);
    } else {
      if (c == 0) {
        out.push_back({t.exp, checked_add(t.coeff, b.terms()[0].coeff)});
        out.insert(out.end(), b.terms().begin() + 1, b.terms().end());
        return Ordinal::from_terms(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

OrdKind classify(const Ordinal& a) {
  if (a.is_zero()) return OrdKind::zero;
  return a.terms().back().exp->is_zero() ? OrdKind::successor : OrdKind::limit;
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal::nat(1)); }

Ordinal pred(const Ordinal& a) {
  if (classify(a) != OrdKind::successor) throw std::domain_error("ordinal " + render(a) + " has no predecessor");
  auto terms = a.terms();
  if (--terms.back().coeff == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

Ordinal left_subtract(const Ordinal& a, const Ordinal& b) {
  if (compare(a, b) == std::strong_ordering::greater) throw std::domain_error("left_subtract requires a <= b");
  const auto& x = a.terms();
  const auto& y = b.terms();
  // Find the first summand where a and b differ; everything of a from there on
  // is absorbed, so the remainder is b's tail from that point.
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && compare(*x[i].exp, *y[i].exp) == 0 && x[i].coeff == y[i].coeff) ++i;
  if (i == y.size()) return Ordinal();
  std::vector<Ordinal::Term> out;
  if (i < x.size() && compare(*x[i].exp, *y[i].exp) == 0) {
    out.push_back({y[i].exp, y[i].coeff - x[i].coeff});
  } else {
    out.push_back(y[i]);
  }
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(i) + 1, y.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal limit_part(const Ordinal& a) {
  if (classify(a) != OrdKind::successor) return a;
  auto terms = a.terms();
  terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

std::uint64_t finite_part(const Ordinal& a) {
  return classify(a) == OrdKind::successor ? a.terms().back().coeff : 0;
}

// ---------------------------------------------------------------------------
// Text form.

namespace {

void render_into(const Ordinal& a, std::string& out);

void render_exponent(const Ordinal& e, std::string& out) {
  if (e.is_finite()) {
    out += std::to_string(e.to_nat());
  } else if (e.terms().size() == 1 && e.terms()[0].coeff == 1) {
    render_into(e, out);
  } else {
    out += '(';
    render_into(e, out);
    out += ')';
  }
}

void render_into(const Ordinal& a, std::string& out) {
  if (a.is_zero()) {
    out += '0';
    return;
  }
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) out += " + ";
    first = false;
    if (t.exp->is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    out += 'w';
    if (!(t.exp->is_finite() && t.exp->to_nat() == 1)) {
      out += '^';
      render_exponent(*t.exp, out);
    }
    if (t.coeff != 1) out += '*' + std::to_string(t.coeff);
  }
}

class Parser {
 public:
  explicit Parser(std::string_view s, std::size_t base = 0) : s_(s), base_(base) {}

  Ordinal ord() {
    Ordinal acc;
    const Ordinal* prev_exp = nullptr;
    while (true) {
      ws();
      std::size_t start = i_;
      Ordinal part = term();
      if (prev_exp && !part.is_zero() && compare(part.exponent(0), *prev_exp) != std::strong_ordering::less)
        throw ParseError("non-canonical ordinal: summand exponents must strictly decrease", base_ + start);
      acc = add(acc, part);
      prev_exp = acc.is_zero() ? nullptr : &acc.terms().back().exp.operator*();
      ws();
      if (peek() != '+') break;
      ++i_;
    }
    return acc;
  }

  void expect_end() {
    ws();
    if (i_ != s_.size()) fail("unexpected character '" + std::string(1, s_[i_]) + "'");
  }

  std::size_t pos() const { return i_; }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, base_ + i_); }

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

  std::uint64_t nat() {
    ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto d = static_cast<std::uint64_t>(s_[i_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("natural number too large");
      v = v * 10 + d;
      ++i_;
    }
    return v;
  }

  Ordinal exponent() {
    ws();
    char c = peek();
    if (c == '(') {
      ++i_;
      Ordinal e = ord();
      ws();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return e;
    }
    if (c == 'w') {
      ++i_;
      ws();
      Ordinal e = Ordinal::nat(1);
      if (peek() == '^') {
        ++i_;
        e = exponent();
      }
      return Ordinal::omega_pow(e);
    }
    return Ordinal::nat(nat());
  }

  Ordinal term() {
    ws();
    if (peek() == 'w') {
      ++i_;
      ws();
      Ordinal e = Ordinal::nat(1);
      if (peek() == '^') {
        ++i_;
        e = exponent();
        ws();
      }
      std::uint64_t c = 1;
      if (peek() == '*') {
        ++i_;
        c = nat();
      }
      return Ordinal::omega_pow(e, c);
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected 'w' or a natural number");
    return Ordinal::nat(nat());
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t i_ = 0;
};

std::string strip_ws(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// Rejects any input whose structure differs from the canonical rendering,
// e.g. "w + w", "3 + 2", "w^1", "w*1", "w^0".
void require_canonical(std::string_view text, const std::string& canon, std::size_t base) {
  std::string a = strip_ws(text);
  std::string b = strip_ws(canon);
  if (a == b) return;
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  std::size_t pos = 0, seen = 0;
  for (; pos < text.size(); ++pos) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) continue;
    if (seen == k) break;
    ++seen;
  }
  throw ParseError("non-canonical ordinal (canonical form is \"" + canon + "\")", base + pos);
}

}  // namespace

std::string render(const Ordinal& a) {
  std::string out;
  render_into(a, out);
  return out;
}

Ordinal parse_ordinal(std::string_view text) {
  Parser p(text);
  Ordinal o = p.ord();
  p.expect_end();
  require_canonical(text, render(o), 0);
  return o;
}

// ---------------------------------------------------------------------------
// Extended bases.

ExtendedBase ExtendedBase::omega_plus(Ordinal nu) {
  ExtendedBase b(std::move(nu));
  b.omega_ = true;
  return b;
}

const Ordinal& ExtendedBase::as_plain() const {
  if (omega_) throw std::domain_error("expected a plain ordinal, got " + render(*this));
  return nu_;
}

std::strong_ordering compare(const ExtendedBase& a, const ExtendedBase& b) {
  if (a.is_omega_plus() != b.is_omega_plus()) return a.is_omega_plus() ? std::strong_ordering::greater : std::strong_ordering::less;
  return compare(a.offset(), b.offset());
}

OrdKind classify(const ExtendedBase& a) {
  if (a.is_omega_plus() && a.offset().is_zero()) return OrdKind::limit;
  return classify(a.offset());
}

ExtendedBase succ(const ExtendedBase& a) {
  return a.is_omega_plus() ? ExtendedBase::omega_plus(succ(a.offset())) : ExtendedBase(succ(a.offset()));
}

ExtendedBase pred(const ExtendedBase& a) {
  return a.is_omega_plus() ? ExtendedBase::omega_plus(pred(a.offset())) : ExtendedBase(pred(a.offset()));
}

ExtendedBase add(const Ordinal& s, const ExtendedBase& x) {
  if (x.is_omega_plus()) return x;
  return ExtendedBase(add(s, x.offset()));
}

std::string render(const ExtendedBase& a) {
  if (a.is_plain()) return render(a.offset());
  if (a.offset().is_zero()) return "W";
  return "W+" + render(a.offset());
}

ExtendedBase parse_extended(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && text[i] == 'W') {
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == text.size()) return ExtendedBase::omega_plus(Ordinal());
    if (text[j] != '+') throw ParseError("expected '+' after W", j);
    std::string_view rest = text.substr(j + 1);
    Parser p(rest, j + 1);
    Ordinal nu = p.ord();
    p.expect_end();
    require_canonical(rest, render(nu), j + 1);
    if (nu.is_zero()) throw ParseError("non-canonical extended ordinal (write W)", j + 1);
    return ExtendedBase::omega_plus(std::move(nu));
  }
  return ExtendedBase(parse_ordinal(text));
}

}  // namespace patterns

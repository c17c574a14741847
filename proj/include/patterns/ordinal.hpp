#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace patterns {

// Raised on malformed or non-canonical ordinal/term text. `position` is a
// byte offset into the original input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class OrdKind { zero, successor, limit };

const char* to_string(OrdKind k);

// Cantor normal form below epsilon_0. Exponents strictly decrease and every
// coefficient is positive, so structural equality is ordinal equality.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> exp;
    std::uint64_t coeff;
  };

  Ordinal() = default;

  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();
  // omega^e * c; c == 0 gives zero.
  static Ordinal omega_pow(const Ordinal& e, std::uint64_t c = 1);
  // Builds from summands, validating canonical order.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  // Throws std::domain_error for infinite values.
  std::uint64_t to_nat() const;
  const Ordinal& exponent(std::size_t i) const { return *terms_[i].exp; }

 private:
  std::vector<Term> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
inline std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return compare(a, b); }
inline bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }

Ordinal add(const Ordinal& a, const Ordinal& b);
inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
OrdKind classify(const Ordinal& a);
Ordinal succ(const Ordinal& a);
// Requires a successor; throws std::domain_error otherwise.
Ordinal pred(const Ordinal& a);
// The unique x with a + x == b. Requires a <= b.
Ordinal left_subtract(const Ordinal& a, const Ordinal& b);
// Splits a as limit_part + finite_part.
Ordinal limit_part(const Ordinal& a);
std::uint64_t finite_part(const Ordinal& a);

Ordinal parse_ordinal(std::string_view text);
std::string render(const Ordinal& a);

// Either a plain ordinal or Omega + nu for a symbolic Omega above every plain
// value. OmegaPlus(0) is Omega itself.
class ExtendedBase {
 public:
  ExtendedBase() = default;
  ExtendedBase(Ordinal plain) : nu_(std::move(plain)) {}  // NOLINT: implicit by design
  static ExtendedBase plain(Ordinal o) { return ExtendedBase(std::move(o)); }
  static ExtendedBase nat(std::uint64_t n) { return ExtendedBase(Ordinal::nat(n)); }
  static ExtendedBase omega_plus(Ordinal nu);

  bool is_plain() const { return !omega_; }
  bool is_omega_plus() const { return omega_; }
  // The plain value, or nu for Omega + nu.
  const Ordinal& offset() const { return nu_; }
  // Throws std::domain_error if not plain.
  const Ordinal& as_plain() const;
  bool is_finite() const { return !omega_ && nu_.is_finite(); }

 private:
  bool omega_ = false;
  Ordinal nu_;
};

std::strong_ordering compare(const ExtendedBase& a, const ExtendedBase& b);
inline std::strong_ordering operator<=>(const ExtendedBase& a, const ExtendedBase& b) { return compare(a, b); }
inline bool operator==(const ExtendedBase& a, const ExtendedBase& b) { return compare(a, b) == 0; }

OrdKind classify(const ExtendedBase& a);
ExtendedBase succ(const ExtendedBase& a);
ExtendedBase pred(const ExtendedBase& a);
// s + x for a plain s; Omega absorbs any plain left summand.
ExtendedBase add(const Ordinal& s, const ExtendedBase& x);

ExtendedBase parse_extended(std::string_view text);
std::string render(const ExtendedBase& a);

}  // namespace patterns

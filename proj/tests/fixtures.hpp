#pragma once

#include "patterns/dilator.hpp"

namespace fixtures {

using patterns::Dilator;
using patterns::FiniteTable;
using patterns::Ordinal;

inline Dilator builtin(const char* s) { return patterns::parse_builtin(s); }

// D(1) = {a}, D(2) = {e0 < e1 < e2} with supp(e2) = {0} but e2 outside the
// image of the coface 1 -> 2 that keeps 0.
inline Dilator broken_support_condition() {
  FiniteTable t;
  t.bound = 2;
  t.values = {0, 1, 3};
  t.cofaces = {{{}}, {{1}, {0}}};
  t.supports = {{}, {{0}}, {{0}, {1}, {0}}};
  return Dilator::table(t);
}

// The identity dilator with one support entry moved.
inline Dilator broken_support_naturality() {
  FiniteTable t = patterns::tabulate(Dilator::identity(), 8);
  t.supports[3][1] = {2};
  return Dilator::table(t);
}

// sigma(const(1)) with one normality value shifted down.
inline Dilator broken_normality() {
  FiniteTable t = patterns::tabulate(Dilator::sigma(Dilator::constant(Ordinal::nat(1))), 8);
  (*t.mu)[4][2] = 3;
  return Dilator::table(t);
}

// Identity with the order of each D(n) reversed: element k is coded as
// n-1-k. Coface actions stay monotone, so this is a pre-dilator, but its term
// extension over any infinite base is ill-founded.
inline Dilator reversed_identity(int bound = 6) {
  FiniteTable t;
  t.bound = bound;
  for (int n = 0; n <= bound; ++n) {
    t.values.push_back(static_cast<std::uint64_t>(n));
    t.supports.emplace_back();
    for (int j = 0; j < n; ++j) t.supports.back().push_back({n - 1 - j});
    if (n < bound) {
      t.cofaces.emplace_back();
      for (int i = 0; i <= n; ++i) {
        t.cofaces.back().emplace_back();
        for (int j = 0; j < n; ++j) {
          int k = n - 1 - j;
          int dk = k < i ? k : k + 1;
          t.cofaces.back().back().push_back(static_cast<std::uint64_t>(n - dk));
        }
      }
    }
  }
  return Dilator::table(t);
}

}  // namespace fixtures

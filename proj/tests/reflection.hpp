#pragma once

#include <functional>
#include <random>

#include "patterns/resemblance.hpp"

namespace reflection {

using namespace patterns;

struct Tally {
  std::size_t formulas = 0;
};

// Sigma_1 reflection of beta into alpha, read off formulas: every complete
// diagram over parameters below alpha (all subsets of size <= 3, and all of
// alpha) with at most `k` witnesses below beta must hold below alpha.
inline bool reflects(const Leq1Table& t, const Ordinal& alpha, const Ordinal& beta, std::size_t k, Tally& tally) {
  std::vector<Ordinal> below_a, below_b;
  for (const auto& x : t.universe()) {
    if (x < alpha) below_a.push_back(x);
    if (x < beta) below_b.push_back(x);
  }
  std::vector<std::vector<Ordinal>> param_sets;
  for (std::uint64_t m = 0; m < (1ULL << below_a.size()); ++m) {
    if (__builtin_popcountll(m) > 3) continue;
    std::vector<Ordinal> p;
    for (std::size_t i = 0; i < below_a.size(); ++i)
      if (m >> i & 1) p.push_back(below_a[i]);
    param_sets.push_back(p);
  }
  param_sets.push_back(below_a);
  for (const auto& params : param_sets) {
    std::vector<Ordinal> pool;
    for (const auto& x : below_b)
      if (std::find(params.begin(), params.end(), x) == params.end()) pool.push_back(x);
    std::vector<Ordinal> w;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
      if (!w.empty()) {
        Sigma1 phi = diagram_formula(t, params, w);
        ++tally.formulas;
        if (!sigma1_holds(t, phi, params, beta)) return false;  // cannot happen: w witnesses it
        if (!sigma1_holds(t, phi, params, alpha)) return false;
      }
      if (w.size() == k) return true;
      for (std::size_t i = from; i < pool.size(); ++i) {
        w.push_back(pool[i]);
        bool ok = rec(i + 1);
        w.pop_back();
        if (!ok) return false;
      }
      return true;
    };
    if (!rec(0)) return false;
  }
  return true;
}

// A random formula with `vars` existential variables over `params` parameters.
inline Sigma1 random_formula(std::mt19937_64& rng, int vars, std::size_t params, const std::vector<Ordinal>& sigmas) {
  using Op = Sigma1Node::Op;
  Sigma1 phi;
  phi.vars = vars;
  auto var = [&]() {
    if (params > 0 && rng() % 3 == 0) return Sigma1Var{true, static_cast<int>(rng() % params)};
    return Sigma1Var{false, static_cast<int>(rng() % static_cast<std::uint64_t>(vars))};
  };
  std::function<Sigma1Node(int)> gen = [&](int depth) {
    Sigma1Node n;
    std::uint64_t pick = depth > 2 ? rng() % 3 : rng() % 6;
    if (pick == 2 && sigmas.empty()) pick = 0;
    switch (pick) {
      case 0: n.op = Op::le; n.terms = {var(), var()}; break;
      case 1: n.op = Op::leq1; n.terms = {var(), var()}; break;
      case 2:
        n.op = Op::repr;
        n.sigma = sigmas[rng() % sigmas.size()];
        n.terms = {var(), var()};
        break;
      case 3: n.op = Op::neg; n.kids.push_back(gen(depth + 1)); break;
      default:
        n.op = pick == 4 ? Op::conj : Op::disj;
        n.kids.push_back(gen(depth + 1));
        n.kids.push_back(gen(depth + 1));
    }
    return n;
  };
  phi.matrix = gen(0);
  return phi;
}

}  // namespace reflection

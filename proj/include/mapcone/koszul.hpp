#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "mapcone/graded.hpp"

namespace mapcone {

/// A permutation is the rearranged sequence of original positions: perm[j]
/// is the original index placed at slot j, so applying `perm` to a word
/// (v_0, ..., v_{n-1}) yields (v_{perm[0]}, ..., v_{perm[n-1]}).
using Permutation = std::vector<int>;

inline int permutation_parity_sign(const Permutation& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

/// Sign eps with v_{perm[0]} (.) ... (.) v_{perm[n-1]} = eps * v_0 (.) ... (.) v_{n-1}
/// in the graded-symmetric algebra: each inversion of the rearranged
/// sequence contributes (-1)^{deg a * deg b}.
inline int koszul_sign(const Permutation& perm, const std::vector<int>& degrees) {
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) parity += degrees[perm[i]] * degrees[perm[j]];
  return parity % 2 == 0 ? 1 : -1;
}

/// All (k, m)-unshuffles of {0..k+m-1}: permutations increasing on the first
/// k slots and on the last m slots. Count is binom(k+m, k).
inline std::vector<Permutation> unshuffles(int k, int m) {
  int n = k + m;
  std::vector<Permutation> out;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Permutation p;
    p.reserve(n);
    std::vector<bool> used(n, false);
    for (int v : pick) {
      p.push_back(v);
      used[v] = true;
    }
    for (int v = 0; v < n; ++v)
      if (!used[v]) p.push_back(v);
    out.push_back(std::move(p));
    // next combination
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

inline std::vector<Permutation> all_permutations(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Unordered partitions of {0..n-1} into exactly `blocks` nonempty blocks.
/// Blocks are listed in order of least element, elements ascending.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n, int blocks) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> code(n, 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      if (used != blocks) return;
      std::vector<std::vector<int>> part(blocks);
      for (int j = 0; j < n; ++j) part[code[j]].push_back(j);
      out.push_back(std::move(part));
      return;
    }
    for (int b = 0; b <= used && b < blocks; ++b) {
      code[i] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  if (n > 0 && blocks > 0) rec(rec, 0, 0);
  return out;
}

/// Word in the graded-symmetric algebra over `space`: basis factors in
/// canonical (nondecreasing index) order with an overall sign. sign == 0
/// encodes the zero word (a repeated odd factor).
struct SymWord {
  GradedSpace space;
  std::vector<int> factors;
  int sign = 1;

  int arity() const { return static_cast<int>(factors.size()); }

  int degree() const {
    int d = 0;
    for (int f : factors) d += space.degree(f);
    return d;
  }
};

/// Canonical form of an arbitrary factor sequence: sorts the factors,
/// accumulating Koszul signs, and detects odd-degree repeats.
inline SymWord canonicalize(const GradedSpace& space, std::vector<int> factors, int sign = 1) {
  SymWord w;
  w.space = space;
  // stable insertion sort, one adjacent transposition at a time
  for (std::size_t i = 1; i < factors.size(); ++i) {
    for (std::size_t j = i; j > 0 && factors[j] < factors[j - 1]; --j) {
      if ((space.degree(factors[j]) % 2 != 0) && (space.degree(factors[j - 1]) % 2 != 0))
        sign = -sign;
      std::swap(factors[j], factors[j - 1]);
    }
  }
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i] == factors[i + 1] && space.degree(factors[i]) % 2 != 0) {
      w.sign = 0;
      w.factors = std::move(factors);
      return w;
    }
  }
  w.sign = sign;
  w.factors = std::move(factors);
  return w;
}

/// Formal rational combination of canonical words over one space.
struct WordSum {
  GradedSpace space;
  std::map<std::vector<int>, Rational> terms;

  WordSum() = default;
  explicit WordSum(GradedSpace s) : space(std::move(s)) {}

  void add(const std::vector<int>& canonical_word, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(canonical_word, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  void add_word(const SymWord& w, const Rational& c) {
    if (w.sign == 0 || c == 0) return;
    add(w.factors, Rational(w.sign) * c);
  }

  bool is_zero() const { return terms.empty(); }
};

/// All canonical words of given arity over the basis of `space`, i.e.
/// nondecreasing index tuples without odd-degree repeats.
inline std::vector<std::vector<int>> canonical_words(const GradedSpace& space, int arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> w;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(w.size()) == arity) {
      out.push_back(w);
      return;
    }
    for (int i = start; i < space.dim(); ++i) {
      if (!w.empty() && w.back() == i && space.degree(i) % 2 != 0) continue;
      w.push_back(i);
      self(self, i);
      w.pop_back();
    }
  };
  if (arity >= 0) rec(rec, 0);
  return out;
}

}  // namespace mapcone

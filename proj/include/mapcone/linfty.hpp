#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mapcone/decalage.hpp"
#include "mapcone/dgla.hpp"
#include "mapcone/koszul.hpp"
#include "mapcone/report.hpp"

namespace mapcone {

/// Structure of degree-one symmetric brackets q_n on the shifted space V[1].
/// Brackets are produced lazily from `generator`, which is only ever called
/// on canonical words, and cached. Arities above max_arity are zero when
/// vanishing_above is set and a capacity failure otherwise.
struct LInftyStructure {
  GradedSpace space;    // V
  GradedSpace shifted;  // V[1]
  int max_arity = 0;
  bool vanishing_above = false;
  std::function<GradedVector(int, const std::vector<int>&)> generator;
  mutable std::map<std::vector<int>, GradedVector> cache;

  /// q_n on a canonical word (sorted basis indices into shifted, no odd
  /// repeats); result over shifted.
  GradedVector bracket_word(const std::vector<int>& word) const {
    int n = static_cast<int>(word.size());
    if (n == 0) throw ArgumentError("empty bracket word");
    if (n > max_arity) {
      if (vanishing_above) return GradedVector(shifted);
      throw CapacityError("bracket of arity " + std::to_string(n) +
                              " beyond stored maximum " + std::to_string(max_arity),
                          n);
    }
    auto it = cache.find(word);
    if (it != cache.end()) return it->second;
    GradedVector v = generator(n, word);
    cache.emplace(word, v);
    return v;
  }

  GradedVector bracket(const SymWord& w) const {
    if (w.sign == 0) return GradedVector(shifted);
    GradedVector v = bracket_word(w.factors);
    if (w.sign < 0) v *= Rational(-1);
    return v;
  }

  /// Multilinear evaluation on arbitrary vectors over shifted.
  GradedVector apply(const std::vector<GradedVector>& args) const {
    GradedVector out(shifted);
    std::vector<int> picks(args.size());
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational coeff) {
      if (pos == args.size()) {
        SymWord w = canonicalize(shifted, picks);
        if (w.sign == 0) return;
        GradedVector v = bracket_word(w.factors);
        v *= coeff * Rational(w.sign);
        out += v;
        return;
      }
      for (const auto& [i, c] : args[pos].coords) {
        picks[pos] = i;
        rec(pos + 1, coeff * c);
      }
    };
    rec(0, Rational(1));
    return out;
  }
};

/// The structure with q_1(v[1]) = -(dv)[1], q_2(v[1] . w[1]) = (-1)^{deg v}
/// [v,w][1], and nothing above: the shifted-bracket form of a DGLA.
inline LInftyStructure suspend_dgla(DGLAPtr g) {
  LInftyStructure s;
  s.space = g->space;
  s.shifted = g->space.shifted(1);
  s.max_arity = 2;
  s.vanishing_above = true;
  GradedSpace shifted = s.shifted;
  s.generator = [g, shifted](int arity, const std::vector<int>& word) {
    if (arity == 1) {
      GradedVector dv = g->d.apply(basis_vector(g->space, shifted.name(word[0])));
      dv *= Rational(-1);
      return reinterpret_in(dv, shifted);
    }
    const GradedVector x = basis_vector(g->space, shifted.name(word[0]));
    const GradedVector y = basis_vector(g->space, shifted.name(word[1]));
    GradedVector b = g->bracket(x, y);
    if (g->space.degree(g->space.index_of(shifted.name(word[0]))) % 2 != 0) b *= Rational(-1);
    return reinterpret_in(b, shifted);
  };
  return s;
}

/// One term of a symmetric-word combination: canonical word -> coefficient.
/// Applying the full coderivation Q to a word yields such a sum:
///   Q(v_1 ... v_n) = sum_{k} sum_{(k,n-k)-unshuffles s} eps(s)
///                    q_k(v_{s1} ... v_{sk}) . v_{s(k+1)} ... v_{sn}.
inline WordSum coderivation_apply(const LInftyStructure& s, const std::vector<int>& word) {
  int n = static_cast<int>(word.size());
  WordSum out(s.shifted);
  std::vector<int> degs(n);
  for (int i = 0; i < n; ++i) degs[i] = s.shifted.degree(word[i]);
  for (int k = 1; k <= n; ++k) {
    for (const auto& perm : unshuffles(k, n - k)) {
      Rational eps = Rational(koszul_sign(perm, degs));
      std::vector<int> head(k);
      for (int j = 0; j < k; ++j) head[j] = word[perm[j]];
      // a sorted selection from a canonical word is canonical
      GradedVector qh = s.bracket_word(head);
      if (qh.is_zero()) continue;
      std::vector<int> tail(n - k);
      for (int j = k; j < n; ++j) tail[j - k] = word[perm[j]];
      for (const auto& [b, c] : qh.coords) {
        std::vector<int> factors;
        factors.reserve(n - k + 1);
        factors.push_back(b);
        factors.insert(factors.end(), tail.begin(), tail.end());
        SymWord w = canonicalize(s.shifted, factors);
        if (w.sign == 0) continue;
        out.add(w.factors, eps * c * Rational(w.sign));
      }
    }
  }
  return out;
}

inline std::string word_label(const GradedSpace& shifted, const std::vector<int>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ".";
    out += shifted.name(word[i]);
  }
  return out;
}

/// Checks (Q Q)^1 = 0 on every canonical word of arity <= upTo: the homotopy
/// Jacobi identities. Empty report iff the brackets form a valid structure
/// through that arity.
inline CheckReport check_linfty(const LInftyStructure& s, int upTo) {
  CheckReport report;
  for (int n = 1; n <= upTo; ++n) {
    for (const auto& word : canonical_words(s.shifted, n)) {
      WordSum qw = coderivation_apply(s, word);
      GradedVector residual(s.shifted);
      for (const auto& [w2, c] : qw.terms) {
        GradedVector v = s.bracket_word(w2);
        v *= c;
        residual += v;
      }
      if (!residual.is_zero())
        report.add("square-zero arity " + std::to_string(n), word_label(s.shifted, word),
                   "residual " + residual.str());
    }
  }
  return report;
}

/// A strict morphism: a single degree-zero chain map f1 intertwining all
/// brackets, with no higher components.
struct LInftyLinearMorphism {
  const LInftyStructure* source = nullptr;
  const LInftyStructure* target = nullptr;
  GradedMap f1;  // between unsuspended spaces, degree 0

  GradedVector apply_shifted(const GradedVector& v) const {
    GradedVector out(target->space);
    for (const auto& [i, c] : v.coords) {
      GradedVector img = f1.apply(basis_vector(source->space, source->shifted.name(i)));
      img *= c;
      out += img;
    }
    return reinterpret_in(out, target->shifted);
  }
};

inline CheckReport check_linear_morphism(const LInftyLinearMorphism& phi, int upTo) {
  CheckReport report;
  const LInftyStructure& s = *phi.source;
  const LInftyStructure& t = *phi.target;
  if (phi.f1.degree != 0) {
    report.add("morphism degree", "f1", "degree " + std::to_string(phi.f1.degree));
    return report;
  }
  int cap = std::min(upTo, s.max_arity);
  if (s.vanishing_above) cap = upTo;
  for (int n = 1; n <= cap; ++n) {
    for (const auto& word : canonical_words(s.shifted, n)) {
      GradedVector lhs = phi.apply_shifted(s.bracket_word(word));
      std::vector<GradedVector> imgs;
      imgs.reserve(word.size());
      for (int i : word)
        imgs.push_back(phi.apply_shifted(basis_vector(s.shifted, i)));
      GradedVector rhs = t.apply(imgs);
      if (!(lhs == rhs))
        report.add("intertwines arity " + std::to_string(n), word_label(s.shifted, word),
                   "lhs " + lhs.str() + " vs rhs " + rhs.str());
    }
  }
  return report;
}

}  // namespace mapcone

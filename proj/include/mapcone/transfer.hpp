#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "mapcone/cone.hpp"
#include "mapcone/polydgla.hpp"

namespace mapcone {

/// Element of the path space H: a pair (l, p) with l in L and p in M[t,dt]
/// subject to p(0) = 0 and p(1) = chi(l). Degree of (l, p) is deg l = deg p.
struct HElt {
  GradedVector l;
  PolyElement p;

  bool is_zero() const { return l.is_zero() && p.is_zero(); }

  HElt& operator+=(const HElt& o) {
    l += o.l;
    p += o.p;
    return *this;
  }
  HElt& operator-=(const HElt& o) {
    l -= o.l;
    p -= o.p;
    return *this;
  }
  HElt& operator*=(const Rational& c) {
    l *= c;
    p *= c;
    return *this;
  }
  friend bool operator==(const HElt& a, const HElt& b) { return a.l == b.l && a.p == b.p; }
};

inline HElt h_zero(const ConeComplex& c, int cap) {
  return HElt{GradedVector(c.l_algebra->space), poly_zero(c.m_algebra, cap)};
}

inline std::optional<int> h_degree(const HElt& x) {
  auto dl = x.l.homogeneous_degree();
  if (dl) return dl;
  return x.p.homogeneous_degree();
}

/// iota(l, m) = (l, t chi(l) + dt m) for a cone element written over the
/// shifted cone basis.
inline HElt h_iota(const ConeComplex& c, int cap, const GradedVector& shifted_cone_vec) {
  GradedVector cv = reinterpret_in(shifted_cone_vec, c.cone_space);
  GradedVector l = cone_l_part(c, cv);
  GradedVector m = cone_m_part(c, cv);
  HElt out = h_zero(c, cap);
  out.l = l;
  out.p.add_term(1, 0, c.chi.apply(l));
  out.p.add_term(0, 1, m);
  return out;
}

/// pi(l, p) = (l, int_0^1 p): one-form part integrated, functions dropped.
inline GradedVector h_pi(const ConeComplex& c, const HElt& x) {
  GradedVector cv = cone_embed(c, x.l, integrate(x.p, 0, 1));
  return reinterpret_in(cv, c.shifted);
}

/// K(l, p) = (0, int_0^t p - t int_0^1 p), acting on the one-form part.
inline HElt h_K(const ConeComplex& c, const HElt& x) {
  HElt out = h_zero(c, x.p.cap);
  out.p = integrate_from_zero(x.p);
  GradedVector total = integrate(x.p, 0, 1);
  total *= Rational(-1);
  out.p.add_term(1, 0, std::move(total));
  return out;
}

/// Unary bracket on shifted H: (l, p) -> (-dl, -dp).
inline HElt h_q1(const ConeComplex& c, const HElt& x) {
  HElt out = h_zero(c, x.p.cap);
  out.l = c.l_algebra->d.apply(x.l);
  out.l *= Rational(-1);
  out.p = poly_d(x.p);
  out.p *= Rational(-1);
  return out;
}

/// Binary bracket on shifted H: (-1)^{deg x} ([l_x, l_y], [p_x, p_y]) for
/// homogeneous x.
inline HElt h_q2(const ConeComplex& c, const HElt& x, const HElt& y) {
  HElt out = h_zero(c, std::max(x.p.cap, y.p.cap));
  out.l = c.l_algebra->bracket(x.l, y.l);
  out.p = poly_bracket(x.p, y.p);
  auto dx = h_degree(x);
  if (dx && *dx % 2 != 0) out *= Rational(-1);
  return out;
}

/// Membership in the path space: p(0) = 0 and p(1) = chi(l).
inline bool h_member(const ConeComplex& c, const HElt& x) {
  if (!evaluate_at(x.p, 0).is_zero()) return false;
  GradedVector e1 = evaluate_at(x.p, 1);
  e1 -= c.chi.apply(x.l);
  return e1.is_zero();
}

/// Unary transferred bracket: the shifted cone differential
/// (l, m) -> (-dl, -chi(l) + dm) on a shifted basis element.
inline GradedVector cone_delta_shifted(const ConeComplex& c, int shifted_index) {
  GradedVector dv = c.delta.apply(basis_vector(c.cone_space, c.shifted.name(shifted_index)));
  dv *= Rational(-1);
  return reinterpret_in(dv, c.shifted);
}

/// Recursive homotopy transfer along iota/pi/K. Components of the extended
/// inclusion per canonical word:
///   f_1 = iota,   f_n = K(sum over two-block splits),
/// and the transferred brackets read off the same inner sums through pi.
struct TransferEngine {
  ConeComplex cone;
  int cap = 0;
  std::map<std::vector<int>, HElt> f_cache;

  /// sum over unordered two-block partitions {B1, B2} of the word slots of
  /// eps(split) q2(f(B1), f(B2)); eps is the Koszul unshuffle sign over the
  /// shifted degrees.
  HElt inner(const std::vector<int>& word) {
    int n = static_cast<int>(word.size());
    HElt acc = h_zero(cone, cap);
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) degs[j] = cone.shifted.degree(word[j]);
    // subsets containing slot 0, proper: each unordered split once
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      std::vector<int> first{0}, second;
      for (int j = 1; j < n; ++j) {
        if (mask & (1 << (j - 1)))
          first.push_back(j);
        else
          second.push_back(j);
      }
      if (second.empty()) continue;
      Permutation perm = first;
      perm.insert(perm.end(), second.begin(), second.end());
      int eps = koszul_sign(perm, degs);
      std::vector<int> w1, w2;
      for (int j : first) w1.push_back(word[j]);
      for (int j : second) w2.push_back(word[j]);
      HElt term = h_q2(cone, component(w1), component(w2));
      term *= Rational(eps);
      acc += term;
    }
    return acc;
  }

  /// f_n on a canonical word.
  HElt component(const std::vector<int>& word) {
    auto it = f_cache.find(word);
    if (it != f_cache.end()) return it->second;
    HElt out;
    if (word.size() == 1)
      out = h_iota(cone, cap, basis_vector(cone.shifted, word[0]));
    else
      out = h_K(cone, inner(word));
    f_cache.emplace(word, out);
    return out;
  }

  GradedVector bracket(const std::vector<int>& word) {
    if (word.size() == 1) return cone_delta_shifted(cone, word[0]);
    return h_pi(cone, inner(word));
  }
};

using TransferEnginePtr = std::shared_ptr<TransferEngine>;

inline TransferEnginePtr make_transfer_engine(const ConeComplex& c, int cap) {
  auto e = std::make_shared<TransferEngine>();
  e->cone = c;
  e->cap = cap;
  return e;
}

/// Transferred structure on the shifted cone computed by the recursion above.
/// cap < 0 selects the default t-degree budget maxArity + 2.
inline LInftyStructure transfer_linfty(const ConeComplex& c, int maxArity, int cap = -1) {
  if (maxArity < 1) throw ArgumentError("bracket family needs arity >= 1");
  if (cap < 0) cap = maxArity + 2;
  LInftyStructure s;
  s.space = c.cone_space;
  s.shifted = c.shifted;
  s.max_arity = maxArity;
  s.vanishing_above = false;
  TransferEnginePtr engine = make_transfer_engine(c, cap);
  s.generator = [engine](int, const std::vector<int>& word) { return engine->bracket(word); };
  return s;
}

/// Rooted tree with unordered children; leaves carry inputs. Internal
/// vertices of the trees used here always have at least two children.
struct RootedTree {
  std::vector<RootedTree> children;
  bool is_leaf() const { return children.empty(); }
};

inline int tree_leaves(const RootedTree& t) {
  if (t.is_leaf()) return 1;
  int n = 0;
  for (const auto& c : t.children) n += tree_leaves(c);
  return n;
}

/// Canonical bracket string; children sorted, so isomorphic trees agree.
inline std::string tree_encoding(const RootedTree& t) {
  if (t.is_leaf()) return "L";
  std::vector<std::string> enc;
  enc.reserve(t.children.size());
  for (const auto& c : t.children) enc.push_back(tree_encoding(c));
  std::sort(enc.begin(), enc.end());
  std::string out = "(";
  for (const auto& e : enc) out += e;
  out += ")";
  return out;
}

/// Order of the automorphism group: product over children of their orders
/// times factorials of repeat multiplicities.
inline BigInt tree_aut(const RootedTree& t) {
  BigInt a = 1;
  std::map<std::string, int> mult;
  for (const auto& c : t.children) {
    a *= tree_aut(c);
    mult[tree_encoding(c)] += 1;
  }
  for (const auto& [e, m] : mult) a *= factorial(m);
  return a;
}

/// All isomorphism classes with n leaves and every internal vertex of
/// valence >= 2. Children are stored in a canonical nondecreasing order.
inline std::vector<RootedTree> enumerate_trees(int n) {
  if (n < 1) return {};
  std::vector<std::vector<RootedTree>> by_size(n + 1);
  by_size[1] = {RootedTree{}};
  for (int k = 2; k <= n; ++k) {
    std::vector<RootedTree> pool;
    std::vector<int> pool_size;
    for (int sz = 1; sz < k; ++sz)
      for (const auto& t : by_size[sz]) {
        pool.push_back(t);
        pool_size.push_back(sz);
      }
    std::vector<int> idx;
    std::function<void(int, int)> rec = [&](int start, int remaining) {
      if (remaining == 0) {
        if (idx.size() < 2) return;
        RootedTree t;
        for (int i : idx) t.children.push_back(pool[i]);
        by_size[k].push_back(std::move(t));
        return;
      }
      for (int i = start; i < static_cast<int>(pool.size()); ++i)
        if (pool_size[i] <= remaining) {
          idx.push_back(i);
          rec(i, remaining - pool_size[i]);
          idx.pop_back();
        }
    };
    rec(0, k);
  }
  return by_size[n];
}

/// Operadic evaluation: leaves feed through iota, internal vertices apply the
/// binary bracket under K (the root applies it under pi), and vertices of
/// valence >= 3 vanish because the path space carries no higher brackets.
/// Summing eps-weighted input permutations and dividing by the automorphism
/// order reproduces the transferred brackets tree by tree.
struct TreeEngine {
  ConeComplex cone;
  int cap = 0;
  std::map<std::pair<std::string, std::vector<int>>, HElt> memo;

  /// K-rooted evaluation of a subtree on an ordered run of inputs (shifted
  /// basis indices), one per leaf in planar order.
  HElt eval_under_K(const RootedTree& t, const std::vector<int>& inputs) {
    if (t.is_leaf()) return h_iota(cone, cap, basis_vector(cone.shifted, inputs[0]));
    auto key = std::make_pair(tree_encoding(t), inputs);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    HElt val = h_K(cone, vertex_value(t, inputs));
    memo.emplace(std::move(key), val);
    return val;
  }

  /// Bracket of the children evaluations, before K or pi.
  HElt vertex_value(const RootedTree& t, const std::vector<int>& inputs) {
    if (t.children.size() != 2) return h_zero(cone, cap);
    int n1 = tree_leaves(t.children[0]);
    std::vector<int> in1(inputs.begin(), inputs.begin() + n1);
    std::vector<int> in2(inputs.begin() + n1, inputs.end());
    return h_q2(cone, eval_under_K(t.children[0], in1), eval_under_K(t.children[1], in2));
  }

  GradedVector bracket(const std::vector<int>& word) {
    int n = static_cast<int>(word.size());
    if (n == 1) return cone_delta_shifted(cone, word[0]);
    std::vector<int> degs(n);
    for (int j = 0; j < n; ++j) degs[j] = cone.shifted.degree(word[j]);
    GradedVector out(cone.shifted);
    for (const auto& tree : enumerate_trees(n)) {
      GradedVector z(cone.shifted);
      for (const auto& perm : all_permutations(n)) {
        std::vector<int> inputs(n);
        for (int j = 0; j < n; ++j) inputs[j] = word[perm[j]];
        HElt top = vertex_value(tree, inputs);
        if (top.is_zero()) continue;
        GradedVector v = h_pi(cone, top);
        v *= Rational(koszul_sign(perm, degs));
        z += v;
      }
      z *= Rational(1) / Rational(tree_aut(tree));
      out += z;
    }
    return out;
  }
};

using TreeEnginePtr = std::shared_ptr<TreeEngine>;

inline TreeEnginePtr make_tree_engine(const ConeComplex& c, int cap) {
  auto e = std::make_shared<TreeEngine>();
  e->cone = c;
  e->cap = cap;
  return e;
}

inline LInftyStructure tree_sum_linfty(const ConeComplex& c, int maxArity, int cap = -1) {
  if (maxArity < 1) throw ArgumentError("bracket family needs arity >= 1");
  if (cap < 0) cap = maxArity + 2;
  LInftyStructure s;
  s.space = c.cone_space;
  s.shifted = c.shifted;
  s.max_arity = maxArity;
  s.vanishing_above = false;
  TreeEnginePtr engine = make_tree_engine(c, cap);
  s.generator = [engine](int, const std::vector<int>& word) { return engine->bracket(word); };
  return s;
}

/// Spanning family of the capped path space used by the contraction checks:
/// images of the basis under iota, (t^i - t) m_j, and t^i dt m_j.
inline std::vector<HElt> h_spanning_family(const ConeComplex& c, int cap) {
  std::vector<HElt> out;
  for (int i = 0; i < c.shifted.dim(); ++i)
    out.push_back(h_iota(c, cap, basis_vector(c.shifted, i)));
  for (int j = 0; j < c.m_algebra->space.dim(); ++j) {
    GradedVector mj = basis_vector(c.m_algebra->space, j);
    for (int i = 2; i <= cap; ++i) {
      HElt x = h_zero(c, cap);
      x.p.add_term(i, 0, mj);
      GradedVector neg = mj;
      neg *= Rational(-1);
      x.p.add_term(1, 0, std::move(neg));
      out.push_back(std::move(x));
    }
    for (int i = 0; i + 1 <= cap; ++i) {
      HElt x = h_zero(c, cap);
      x.p.add_term(i, 1, mj);
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace mapcone

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mapcone/artin.hpp"
#include "mapcone/cone.hpp"
#include "mapcone/polydgla.hpp"

namespace mapcone {

inline GradedSpace tensor_space(const GradedSpace& v, const ArtinAlgebra& a) {
  std::vector<BasisElement> basis;
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      basis.push_back({v.name(i) + "@" + a.monomials[j], v.degree(i)});
  return GradedSpace(v.label() + "(x)" + a.label, basis);
}

/// m_A (x) M for a DGLA M: differential acts on the M leg, the bracket
/// multiplies monomials through the ring table. Basis "v@mu" in degree
/// deg v; mon_weight records the filtration weight of the monomial leg.
struct TensorDGLA {
  DGLAPtr dgla;
  DGLAPtr base;
  ArtinAlgebra artin;
  std::vector<std::pair<int, int>> split;  // tensor index -> (base index, monomial index)
  std::vector<std::vector<int>> index;     // [base][monomial] -> tensor index
  std::vector<int> mon_weight;             // tensor index -> weight of its monomial

  GradedVector weight_slice(const GradedVector& v, int k) const {
    GradedVector out(dgla->space);
    for (const auto& [i, c] : v.coords)
      if (mon_weight[i] == k) out.add_term(i, c);
    return out;
  }
};

inline TensorDGLA tensor_dgla(DGLAPtr base, const ArtinAlgebra& a) {
  TensorDGLA t;
  t.base = base;
  t.artin = a;
  GradedSpace space = tensor_space(base->space, a);
  int nb = base->space.dim(), na = a.dim(), n = space.dim();
  t.split.assign(n, {0, 0});
  t.index.assign(nb, std::vector<int>(na, -1));
  t.mon_weight.assign(n, 0);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < na; ++j) {
      int k = space.index_of(base->space.name(i) + "@" + a.monomials[j]);
      t.split[k] = {i, j};
      t.index[i][j] = k;
      t.mon_weight[k] = a.weight[j];
    }
  auto g = std::make_shared<DGLA>();
  g->space = space;
  g->d = GradedMap(space, space, 1);
  for (int k = 0; k < n; ++k) {
    auto [i, j] = t.split[k];
    GradedVector img(space);
    for (const auto& [w, c] : base->d.apply(basis_vector(base->space, i)).coords)
      img.add_term(t.index[w][j], c);
    g->d.set_column(k, img);
  }
  g->d.validate_blocks();
  g->table.assign(n, std::vector<GradedVector>(n, GradedVector(space)));
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      auto [i1, j1] = t.split[k1];
      auto [i2, j2] = t.split[k2];
      GradedVector br = base->bracket_basis(i1, i2);
      if (br.is_zero()) continue;
      GradedVector img(space);
      for (const auto& [mu, cm] : a.table[j1][j2])
        for (const auto& [w, c] : br.coords) img.add_term(t.index[w][mu], c * cm);
      g->table[k1][k2] = std::move(img);
    }
  t.dgla = g;
  return t;
}

/// chi (x) id on the monomial leg.
inline DGLAMorphism tensor_morphism(const DGLAMorphism& f, const TensorDGLA& src,
                                    const TensorDGLA& tgt) {
  GradedMap m(src.dgla->space, tgt.dgla->space, 0);
  for (int k = 0; k < src.dgla->space.dim(); ++k) {
    auto [i, j] = src.split[k];
    GradedVector img(tgt.dgla->space);
    for (const auto& [w, c] : f.apply(basis_vector(src.base->space, i)).coords)
      img.add_term(tgt.index[w][j], c);
    m.set_column(k, img);
  }
  m.validate_blocks();
  return DGLAMorphism{src.dgla, tgt.dgla, std::move(m)};
}

struct VecOps {
  DGLAPtr g;
  using E = GradedVector;
  E bracket(const E& x, const E& y) const { return g->bracket(x, y); }
  E d(const E& x) const { return g->d.apply(x); }
  E zero() const { return GradedVector(g->space); }
};

struct PolyOps {
  DGLAPtr g;
  int cap = 0;
  using E = PolyElement;
  E bracket(const E& x, const E& y) const { return poly_bracket(x, y); }
  E d(const E& x) const { return poly_d(x); }
  E zero() const { return poly_zero(g, cap); }
};

/// e^a * y = y + sum_{n>=0} ad_a^n([a, y] - da)/(n+1)!, for a of degree 0
/// in a nilpotent algebra.
template <class Ops>
typename Ops::E gauge_action(const Ops& ops, const typename Ops::E& a,
                             const typename Ops::E& y) {
  typename Ops::E out = y;
  typename Ops::E cur = ops.bracket(a, y);
  cur -= ops.d(a);
  Rational fact = 1;
  for (int n = 0; !cur.is_zero(); ++n) {
    if (n > 64) throw ArgumentError("gauge series does not terminate");
    fact *= Rational(n + 1);
    typename Ops::E term = cur;
    term *= Rational(1) / fact;
    out += term;
    cur = ops.bracket(a, cur);
  }
  return out;
}

/// Baker-Campbell-Hausdorff product of degree-0 elements via the nested
/// commutator expansion; word length is bounded by the nilpotency of the
/// coefficients.
template <class Ops>
typename Ops::E bch(const Ops& ops, const typename Ops::E& a, const typename Ops::E& b,
                    int max_word) {
  typename Ops::E out = ops.zero();
  for (int w = 1; w <= max_word; ++w) {
    // compositions of w into n blocks (p_i, q_i), p_i + q_i >= 1
    std::vector<std::pair<int, int>> blocks;
    std::function<void(int)> rec = [&](int remaining) {
      if (remaining == 0) {
        if (blocks.empty()) return;
        int n = static_cast<int>(blocks.size());
        BigInt denom = BigInt(n) * BigInt(w);
        for (const auto& [p, q] : blocks) denom *= factorial(p) * factorial(q);
        Rational coeff = Rational(1) / Rational(denom);
        if (n % 2 == 0) coeff = -coeff;
        std::vector<const typename Ops::E*> letters;
        for (const auto& [p, q] : blocks) {
          for (int i = 0; i < p; ++i) letters.push_back(&a);
          for (int i = 0; i < q; ++i) letters.push_back(&b);
        }
        typename Ops::E v = *letters.back();
        for (int j = static_cast<int>(letters.size()) - 2; j >= 0; --j)
          v = ops.bracket(*letters[j], v);
        v *= coeff;
        out += v;
        return;
      }
      for (int p = 0; p <= remaining; ++p)
        for (int q = (p == 0 ? 1 : 0); p + q <= remaining; ++q) {
          blocks.push_back({p, q});
          rec(remaining - p - q);
          blocks.pop_back();
        }
    };
    rec(w);
  }
  return out;
}

/// Solution candidate of the deformation problem of a chain map: x of
/// degree 1 on the domain side, a of degree 0 on the codomain side, both
/// with coefficients in the maximal ideal.
struct MCPair {
  GradedVector x;
  GradedVector a;
};

struct DeformationSetup {
  TensorDGLA la;
  TensorDGLA ma;
  DGLAMorphism chi_a;  // tensored chain map
  int max_word() const { return std::max(1, la.artin.nil_index - 1); }
};

inline DeformationSetup make_setup(const DGLAMorphism& chi, const ArtinAlgebra& a) {
  DeformationSetup s;
  s.la = tensor_dgla(chi.source, a);
  s.ma = tensor_dgla(chi.target, a);
  s.chi_a = tensor_morphism(chi, s.la, s.ma);
  return s;
}

/// The two defining equations: dx + [x,x]/2 = 0 and e^a * chi(x) = 0.
inline CheckReport mc_pair_check(const DeformationSetup& s, const MCPair& p) {
  CheckReport report;
  VecOps lops{s.la.dgla}, mops{s.ma.dgla};
  GradedVector r1 = lops.d(p.x);
  GradedVector half = lops.bracket(p.x, p.x);
  half *= Rational(1) / Rational(2);
  r1 += half;
  if (!r1.is_zero()) report.add("curvature", p.x.str(), "residual " + r1.str());
  GradedVector r2 = gauge_action(mops, p.a, s.chi_a.apply(p.x));
  if (!r2.is_zero()) report.add("twisted image", p.a.str(), "residual " + r2.str());
  return report;
}

/// Solution of the deformation equations written on the shifted tensored
/// cone: gamma of shifted degree 0 with l-part x and m-part a.
inline GradedVector pair_to_gamma(const GradedSpace& tshifted, const DeformationSetup& s,
                                  const MCPair& p) {
  GradedVector out(tshifted);
  for (const auto& [i, c] : p.x.coords)
    out.add_term(tshifted.index_of("l." + s.la.dgla->space.name(i)), c);
  for (const auto& [i, c] : p.a.coords)
    out.add_term(tshifted.index_of("m." + s.ma.dgla->space.name(i)), c);
  return out;
}

/// sum_n <gamma ... gamma>_n / n! for gamma of even shifted degree with
/// nilpotent coefficients, written over the base brackets: each multiset of
/// support elements contributes its bracket tensored with the product of its
/// monomials, divided by the repetition factorials.
inline GradedVector mc_residue(const LInftyStructure& s, const ArtinAlgebra& a,
                               const GradedSpace& tshifted, const GradedVector& gamma) {
  auto deg = gamma.homogeneous_degree();
  if (deg && *deg % 2 != 0)
    throw ArgumentError("curvature expansion needs an even-degree argument");
  int top = a.nil_index - 1;
  if (top < 1) top = 1;
  if (!s.vanishing_above && s.max_arity < top)
    throw CapacityError("expansion needs brackets through arity " + std::to_string(top), top);
  int n_terms = s.vanishing_above ? std::min(top, s.max_arity) : top;

  struct Comp {
    int base;  // index into s.shifted
    int mon;   // index into a.monomials
    Rational c;
  };
  std::vector<Comp> support;
  for (const auto& [i, c] : gamma.coords) {
    const std::string& nm = tshifted.name(i);
    auto at = nm.rfind('@');
    if (at == std::string::npos) throw ArgumentError("element has a constant term");
    support.push_back({s.shifted.index_of(nm.substr(0, at)), a.find(nm.substr(at + 1)), c});
  }

  GradedVector out(tshifted);
  std::vector<int> picks;
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    if (!picks.empty()) {
      // evaluate current multiset
      Rational coeff = 1;
      int run = 1;
      for (std::size_t i = 0; i < picks.size(); ++i) {
        coeff *= support[picks[i]].c;
        if (i > 0 && picks[i] == picks[i - 1])
          ++run;
        else
          run = 1;
        coeff /= Rational(run);  // accumulates 1/prod(mult!)
      }
      IdealElement mon{{support[picks[0]].mon, Rational(1)}};
      for (std::size_t i = 1; i < picks.size() && !mon.empty(); ++i)
        mon = artin_mul(a, mon, IdealElement{{support[picks[i]].mon, Rational(1)}});
      if (!mon.empty()) {
        std::vector<int> word;
        for (int pk : picks) word.push_back(support[pk].base);
        std::sort(word.begin(), word.end());
        GradedVector br = s.bracket_word(word);
        for (const auto& [b, cb] : br.coords)
          for (const auto& [mu, cm] : mon)
            out.add_term(tshifted.index_of(s.shifted.name(b) + "@" + a.monomials[mu]),
                         coeff * cb * cm);
      }
    }
    if (remaining == 0) return;
    for (int i = start; i < static_cast<int>(support.size()); ++i) {
      picks.push_back(i);
      rec(i, remaining - 1);
      picks.pop_back();
    }
  };
  // enumerate multisets of sizes 1..n_terms; evaluation happens on each prefix
  // along the way, so run the recursion from the empty multiset
  rec(0, n_terms);
  return out;
}

/// Gauge transformation of pairs: l of degree 0 on the domain side, b of
/// degree -1 on the codomain side.
struct GaugePair {
  GradedVector l;
  GradedVector b;
};

inline MCPair gauge_pair_act(const DeformationSetup& s, const GaugePair& g, const MCPair& p) {
  VecOps lops{s.la.dgla}, mops{s.ma.dgla};
  MCPair out;
  out.x = gauge_action(lops, g.l, p.x);
  GradedVector chl = s.chi_a.apply(g.l);
  chl *= Rational(-1);
  int w = s.max_word();
  out.a = bch(mops, mops.d(g.b), bch(mops, p.a, chl, w), w);
  return out;
}

inline CheckReport gauge_equiv_check(const DeformationSetup& s, const MCPair& p0,
                                     const MCPair& p1, const GaugePair& g) {
  CheckReport report;
  report.merge(mc_pair_check(s, p0));
  report.merge(mc_pair_check(s, p1));
  MCPair acted = gauge_pair_act(s, g, p0);
  GradedVector rx = acted.x;
  rx -= p1.x;
  if (!rx.is_zero()) report.add("gauge endpoint x", g.l.str(), "difference " + rx.str());
  GradedVector ra = acted.a;
  ra -= p1.a;
  if (!ra.is_zero()) report.add("gauge endpoint a", g.b.str(), "difference " + ra.str());
  return report;
}

inline PolyElement const_path(DGLAPtr g, int cap, const GradedVector& v) {
  return poly_term(g, cap, 0, 0, v);
}

inline PolyElement poly_map_apply(const GradedMap& f, const PolyElement& p, DGLAPtr target) {
  PolyElement out(target, p.cap);
  for (const auto& [k, v] : p.parts) out.add_term(k.first, k.second, f.apply(v));
  return out;
}

/// Path of pairs over the interval variable: lt in (m_A (x) L)[s,ds] of
/// degree 1, mt in (m_A (x) M)[s,ds] of degree 0.
struct MCPairPath {
  PolyElement lt;
  PolyElement mt;
};

inline MCPair path_endpoint(const DeformationSetup& s, const MCPairPath& path,
                            const Rational& at) {
  (void)s;
  return MCPair{evaluate_at(path.lt, at), evaluate_at(path.mt, at)};
}

/// Path built from a gauge between pairs:
///   lt = e^{s l} * x0,   mt = d(s b) . a0 . (-chi(s l))
/// with . the BCH product taken in (m_A (x) M)[s,ds].
inline MCPairPath homotopy_from_gauge(const DeformationSetup& s, const MCPair& p0,
                                      const GaugePair& g, int cap = 8) {
  CheckReport pre = mc_pair_check(s, p0);
  pre.merge(mc_pair_check(s, gauge_pair_act(s, g, p0)));
  if (!pre.ok())
    throw ArgumentError("gauge path endpoints do not solve the deformation equations");
  PolyOps lops{s.la.dgla, cap}, mops{s.ma.dgla, cap};
  MCPairPath path;
  PolyElement sl = poly_term(s.la.dgla, cap, 1, 0, g.l);
  path.lt = gauge_action(lops, sl, const_path(s.la.dgla, cap, p0.x));
  PolyElement sb = poly_term(s.ma.dgla, cap, 1, 0, g.b);
  PolyElement chsl = poly_map_apply(s.chi_a.map, sl, s.ma.dgla);
  chsl *= Rational(-1);
  int w = s.max_word();
  path.mt = bch(mops, poly_d(sb),
                bch(mops, const_path(s.ma.dgla, cap, p0.a), chsl, w), w);
  return path;
}

/// Validity of a path of pairs: the degree-1 component solves the curvature
/// equation in the interval algebra and the twisted image vanishes there.
inline CheckReport path_check(const DeformationSetup& s, const MCPairPath& path) {
  CheckReport report;
  PolyOps lops{s.la.dgla, path.lt.cap}, mops{s.ma.dgla, path.mt.cap};
  PolyElement r1 = poly_d(path.lt);
  PolyElement half = poly_bracket(path.lt, path.lt);
  half *= Rational(1) / Rational(2);
  r1 += half;
  if (!r1.is_zero()) report.add("path curvature", "lt", "nonzero residual");
  PolyElement img = poly_map_apply(s.chi_a.map, path.lt, s.ma.dgla);
  PolyElement r2 = gauge_action(mops, path.mt, img);
  if (!r2.is_zero()) report.add("path twisted image", "mt", "nonzero residual");
  return report;
}

/// Writes a degree-1 solution of the curvature equation in (m_A (x) L)[s,ds]
/// as e^{lambda(s)} * x0 with lambda(0) = 0, by induction on the ideal
/// filtration; at each stage a linear system on the weight-k slice is solved
/// with free variables pinned to zero, so the output is deterministic.
inline std::pair<GradedVector, PolyElement> mc_poly_factorization(const TensorDGLA& la,
                                                                  const PolyElement& x) {
  DGLAPtr g = la.dgla;
  PolyOps ops{g, x.cap * std::max(2, la.artin.nil_index)};
  PolyElement r0 = poly_d(x);
  PolyElement h2 = poly_bracket(x, x);
  h2 *= Rational(1) / Rational(2);
  r0 += h2;
  if (!r0.is_zero()) throw ArgumentError("path does not solve the curvature equation");
  GradedVector x0 = evaluate_at(x, 0);
  PolyElement lambda = ops.zero();
  PolyElement xw = x;
  xw.cap = ops.cap;
  PolyElement x0p = const_path(g, ops.cap, x0);
  for (int k = 1; k < la.artin.nil_index; ++k) {
    PolyElement r = xw;
    r -= gauge_action(ops, lambda, x0p);
    // slice of exact weight k
    PolyElement rk(g, ops.cap);
    int max_s = 0;
    for (const auto& [key, v] : r.parts) {
      rk.add_term(key.first, key.second, la.weight_slice(v, k));
      max_s = std::max(max_s, key.first);
    }
    if (rk.is_zero()) continue;
    int dmax = max_s + 1;
    // unknowns: s^j (x) basis vectors of degree 0 and weight k, j = 1..dmax
    std::vector<std::pair<int, int>> unknowns;
    for (int j = 1; j <= dmax; ++j)
      for (int i = 0; i < g->space.dim(); ++i)
        if (g->space.degree(i) == 0 && la.mon_weight[i] == k) unknowns.push_back({j, i});
    // first-order effect of a correction h on the weight-k slice; the
    // [h, x0] part raises the weight, so only -dh survives the slicing
    auto apply_t = [&](const PolyElement& h) {
      PolyElement t = poly_bracket(h, x0p);
      t -= poly_d(h);
      PolyElement sliced(g, ops.cap);
      for (const auto& [key, v] : t.parts)
        sliced.add_term(key.first, key.second, la.weight_slice(v, k));
      return sliced;
    };
    std::vector<PolyElement> cols;
    cols.reserve(unknowns.size());
    for (const auto& [j, i] : unknowns)
      cols.push_back(apply_t(poly_term(g, ops.cap, j, 0, basis_vector(g->space, i))));
    // coordinate map over all (s-power, ds, basis) triples seen
    std::map<std::tuple<int, int, int>, int> coord;
    auto note = [&](const PolyElement& p) {
      for (const auto& [key, v] : p.parts)
        for (const auto& [i, c] : v.coords) {
          auto t = std::make_tuple(key.first, key.second, i);
          if (!coord.count(t)) {
            int next = static_cast<int>(coord.size());
            coord.emplace(t, next);
          }
        }
    };
    for (const auto& cpoly : cols) note(cpoly);
    note(rk);
    QMatrix m(coord.size(), QRow(unknowns.size(), Rational(0)));
    QRow rhs(coord.size(), Rational(0));
    for (std::size_t u = 0; u < cols.size(); ++u)
      for (const auto& [key, v] : cols[u].parts)
        for (const auto& [i, c] : v.coords)
          m[coord.at(std::make_tuple(key.first, key.second, i))][u] = c;
    for (const auto& [key, v] : rk.parts)
      for (const auto& [i, c] : v.coords)
        rhs[coord.at(std::make_tuple(key.first, key.second, i))] = c;
    auto sol = solve(m, rhs);
    if (!sol) throw ArgumentError("path is not a gauge deformation of its origin");
    PolyElement h(g, ops.cap);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      if ((*sol)[u] == 0) continue;
      GradedVector v = basis_vector(g->space, unknowns[u].second);
      v *= (*sol)[u];
      h.add_term(unknowns[u].first, 0, std::move(v));
    }
    lambda = bch(ops, lambda, h, la.artin.nil_index - 1);
  }
  PolyElement check = xw;
  check -= gauge_action(ops, lambda, x0p);
  if (!check.is_zero()) throw ArgumentError("factorization did not close");
  lambda.cap = std::max(x.cap, lambda.parts.empty() ? 0 : lambda.parts.rbegin()->first.first);
  return {x0, lambda};
}

/// Recovers a gauge between the endpoints of a path of pairs: factor the
/// degree-1 side through its origin, transport the degree-0 side to
///   mu = mt . chi(lambda) . (-a0),
/// which is closed, and integrate its one-form part.
inline GaugePair extract_gauge_from_path(const DeformationSetup& s, const MCPairPath& path) {
  auto [x0, lambda] = mc_poly_factorization(s.la, path.lt);
  GaugePair g;
  g.l = evaluate_at(lambda, 1);
  int cap = std::max(path.mt.cap, lambda.cap * std::max(2, s.la.artin.nil_index));
  PolyOps mops{s.ma.dgla, cap};
  PolyElement mt = path.mt;
  mt.cap = cap;
  PolyElement chl = poly_map_apply(s.chi_a.map, lambda, s.ma.dgla);
  chl.cap = cap;
  PolyElement ma0 = const_path(s.ma.dgla, cap, evaluate_at(path.mt, 0));
  ma0 *= Rational(-1);
  int w = s.max_word();
  PolyElement mu = bch(mops, mt, bch(mops, chl, ma0, w), w);
  if (!poly_d(mu).is_zero())
    throw ArgumentError("transported codomain path is not closed");
  g.b = integrate(mu, 0, 1);
  return g;
}

}  // namespace mapcone

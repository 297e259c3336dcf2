#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mapcone/linfty.hpp"

namespace mapcone {

/// Polynomials phi_n and numbers I_n, B_n defined by
///   phi_1 = t,  phi_{n+1} = int_0^t phi_n - t I_n,  I_n = int_0^1 phi_n,
///   B_0 = 1, B_n = -n! I_n.
/// phi[n] holds the coefficients of phi_n with index = power of t.
struct BernoulliTable {
  std::vector<std::vector<Rational>> phi;
  std::vector<Rational> I;
  std::vector<Rational> B;
};

inline BernoulliTable bernoulli(int n_max) {
  if (n_max < 0) throw ArgumentError("negative Bernoulli bound");
  BernoulliTable t;
  t.phi.resize(n_max + 1);
  t.I.assign(n_max + 1, Rational(0));
  t.B.assign(n_max + 1, Rational(0));
  t.B[0] = 1;
  if (n_max == 0) return t;
  t.phi[1] = {Rational(0), Rational(1)};
  for (int n = 1; n <= n_max; ++n) {
    const auto& p = t.phi[n];
    Rational in = 0;
    for (std::size_t i = 0; i < p.size(); ++i) in += p[i] / Rational(i + 1);
    t.I[n] = in;
    t.B[n] = -factorial(n) * in;
    if (n < n_max) {
      std::vector<Rational> next(p.size() + 1, Rational(0));
      for (std::size_t i = 0; i < p.size(); ++i) next[i + 1] = p[i] / Rational(i + 1);
      next[1] -= in;
      while (!next.empty() && next.back() == 0) next.pop_back();
      t.phi[n + 1] = std::move(next);
    }
  }
  return t;
}

inline Rational eval_poly(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational out = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) out = out * x + coeffs[i];
  return out;
}

/// Mapping cone of a chain map chi: L -> M. Basis names are the source names
/// prefixed with "l." and "m."; an L generator keeps its degree, an M
/// generator sits one higher. The differential is
///   (l, m) -> (dl, chi(l) - dm),
/// squaring to zero because chi is a chain map.
struct ConeComplex {
  DGLAPtr l_algebra;
  DGLAPtr m_algebra;
  GradedMap chi;  // underlying map of the DGLA morphism
  GradedSpace cone_space;
  GradedSpace shifted;  // cone_space shifted by one
  GradedMap delta;      // degree +1 differential on cone_space
};

inline GradedVector cone_embed(const ConeComplex& c, const GradedVector& l,
                               const GradedVector& m) {
  GradedVector out(c.cone_space);
  for (const auto& [i, v] : l.coords)
    out.add_term(c.cone_space.index_of("l." + c.l_algebra->space.name(i)), v);
  for (const auto& [i, v] : m.coords)
    out.add_term(c.cone_space.index_of("m." + c.m_algebra->space.name(i)), v);
  return out;
}

inline GradedVector cone_l_part(const ConeComplex& c, const GradedVector& x) {
  GradedVector out(c.l_algebra->space);
  for (const auto& [i, v] : x.coords) {
    const std::string& nm = x.space.name(i);
    if (nm.rfind("l.", 0) == 0) out.add_term(c.l_algebra->space.index_of(nm.substr(2)), v);
  }
  return out;
}

inline GradedVector cone_m_part(const ConeComplex& c, const GradedVector& x) {
  GradedVector out(c.m_algebra->space);
  for (const auto& [i, v] : x.coords) {
    const std::string& nm = x.space.name(i);
    if (nm.rfind("m.", 0) == 0) out.add_term(c.m_algebra->space.index_of(nm.substr(2)), v);
  }
  return out;
}

inline ConeComplex make_cone(const DGLAMorphism& chi) {
  ConeComplex c;
  c.l_algebra = chi.source;
  c.m_algebra = chi.target;
  c.chi = chi.map;
  std::vector<BasisElement> basis;
  for (int i = 0; i < chi.source->space.dim(); ++i)
    basis.push_back({"l." + chi.source->space.name(i), chi.source->space.degree(i)});
  for (int i = 0; i < chi.target->space.dim(); ++i)
    basis.push_back({"m." + chi.target->space.name(i), chi.target->space.degree(i) + 1});
  c.cone_space = GradedSpace("cone(" + chi.source->space.label() + "->" +
                                 chi.target->space.label() + ")",
                             basis);
  c.shifted = c.cone_space.shifted(1);
  c.delta = GradedMap(c.cone_space, c.cone_space, 1);
  for (int i = 0; i < c.cone_space.dim(); ++i) {
    const std::string& nm = c.cone_space.name(i);
    if (nm.rfind("l.", 0) == 0) {
      GradedVector src = basis_vector(chi.source->space, nm.substr(2));
      c.delta.set_column(i, cone_embed(c, chi.source->d.apply(src), chi.map.apply(src)));
    } else {
      GradedVector dm = c.m_algebra->d.apply(basis_vector(c.m_algebra->space, nm.substr(2)));
      dm *= Rational(-1);
      c.delta.set_column(i, cone_embed(c, GradedVector(c.l_algebra->space), dm));
    }
  }
  c.delta.validate_blocks();
  return c;
}

/// Deliberate single-site corruptions of the cone brackets, used to confirm
/// that the square-zero check detects each coefficient and sign.
enum class ConeMutation {
  none,
  ll_sign,      // flip the sign of the two-sided bracket on L-L words
  ml_half,      // flip the sign of the 1/2 coefficient on m.l words
  chi_sign,     // flip the chi term of the unary bracket
  dm_sign,      // flip the dm term of the unary bracket
  dl_sign,      // flip the dl term of the unary bracket
  higher_sign,  // flip the overall sign of all brackets of arity >= 3
  drop_koszul,  // evaluate the nested-bracket sum without permutation signs
};

struct ConeOptions {
  std::map<int, Rational> bernoulli_override;
  ConeMutation mutation = ConeMutation::none;
};

/// The bracket family on the shifted cone. Writing a word with its M-side
/// factors first as m_1 ... m_n . l_1 ... l_k (Koszul-reordered), the only
/// nonzero brackets are:
///   n=0, k=1:        (-dl, -chi(l) + dm) on a single generator
///   n=0, k=2:        ((-1)^{deg l_1} [l_1, l_2], 0)
///   n=1, k=1:        (0, (-1)^{deg m + 1}/2 [m, chi(l)])
///   n>=2, k=1:       (0, -(-1)^{deg m_1+..+deg m_n} B_n/n! *
///                     sum_s eps(s) [m_{s1}, [..., [m_{sn}, chi(l)]...]])
/// with eps the Koszul sign over the M-side degrees. Degrees in the sign
/// factors are the unshifted ones of the side the element lives on.
inline LInftyStructure cone_linfty(const ConeComplex& c, int maxArity,
                                   const ConeOptions& opts = {}) {
  if (maxArity < 1) throw ArgumentError("bracket family needs arity >= 1");
  LInftyStructure s;
  s.space = c.cone_space;
  s.shifted = c.shifted;
  s.max_arity = maxArity;
  s.vanishing_above = false;
  BernoulliTable bt = bernoulli(maxArity);
  ConeComplex cone = c;
  ConeOptions o = opts;
  s.generator = [cone, bt, o](int arity, const std::vector<int>& word) {
    const DGLA& L = *cone.l_algebra;
    const DGLA& M = *cone.m_algebra;
    auto side_of = [&](int idx) {
      return cone.shifted.name(idx).rfind("m.", 0) == 0 ? 1 : 0;
    };
    if (arity == 1) {
      GradedVector lo(L.space), mo(M.space);
      const std::string& nm = cone.shifted.name(word[0]);
      if (side_of(word[0]) == 0) {
        GradedVector x = basis_vector(L.space, nm.substr(2));
        lo = L.d.apply(x);
        lo *= (o.mutation == ConeMutation::dl_sign) ? Rational(1) : Rational(-1);
        mo = cone.chi.apply(x);
        mo *= (o.mutation == ConeMutation::chi_sign) ? Rational(1) : Rational(-1);
      } else {
        mo = M.d.apply(basis_vector(M.space, nm.substr(2)));
        if (o.mutation == ConeMutation::dm_sign) mo *= Rational(-1);
      }
      return reinterpret_in(cone_embed(cone, lo, mo), cone.shifted);
    }
    // separate sides, M first, tracking the Koszul sign of the reorder
    std::vector<int> order;
    for (int j = 0; j < arity; ++j)
      if (side_of(word[j]) == 1) order.push_back(j);
    int n_m = static_cast<int>(order.size());
    for (int j = 0; j < arity; ++j)
      if (side_of(word[j]) == 0) order.push_back(j);
    std::vector<int> degs(arity);
    for (int j = 0; j < arity; ++j) degs[j] = cone.shifted.degree(word[j]);
    Rational coeff = Rational(koszul_sign(order, degs));
    int n_l = arity - n_m;
    GradedVector zero(cone.shifted);
    if (n_l != 1 && !(n_l == 2 && n_m == 0)) return zero;
    if (n_l == 2) {
      const std::string a = cone.shifted.name(word[order[0]]).substr(2);
      const std::string b = cone.shifted.name(word[order[1]]).substr(2);
      GradedVector lb = L.bracket(basis_vector(L.space, a), basis_vector(L.space, b));
      if (L.space.degree(L.space.index_of(a)) % 2 != 0) coeff = -coeff;
      if (o.mutation == ConeMutation::ll_sign) coeff = -coeff;
      lb *= coeff;
      return reinterpret_in(cone_embed(cone, lb, GradedVector(M.space)), cone.shifted);
    }
    GradedVector chl =
        cone.chi.apply(basis_vector(L.space, cone.shifted.name(word[order[n_m]]).substr(2)));
    std::vector<GradedVector> ms;
    std::vector<int> mdeg;
    for (int j = 0; j < n_m; ++j) {
      ms.push_back(basis_vector(M.space, cone.shifted.name(word[order[j]]).substr(2)));
      mdeg.push_back(M.space.degree(M.space.index_of(cone.shifted.name(word[order[j]]).substr(2))));
    }
    if (n_m == 1) {
      GradedVector mb = M.bracket(ms[0], chl);
      if (mdeg[0] % 2 == 0) coeff = -coeff;  // (-1)^{deg m + 1}
      coeff /= 2;
      if (o.mutation == ConeMutation::ml_half) coeff = -coeff;
      mb *= coeff;
      return reinterpret_in(cone_embed(cone, GradedVector(L.space), mb), cone.shifted);
    }
    Rational bn = bt.B[n_m];
    auto ov = o.bernoulli_override.find(n_m);
    if (ov != o.bernoulli_override.end()) bn = ov->second;
    if (bn == 0) return zero;
    int dsum = 0;
    for (int d : mdeg) dsum += d;
    Rational front = -bn / Rational(factorial(n_m));
    if (dsum % 2 != 0) front = -front;
    if (o.mutation == ConeMutation::higher_sign) front = -front;
    GradedVector acc(M.space);
    for (const auto& perm : all_permutations(n_m)) {
      int eps = (o.mutation == ConeMutation::drop_koszul) ? 1 : koszul_sign(perm, mdeg);
      GradedVector y = chl;
      for (int j = n_m - 1; j >= 0; --j) y = M.bracket(ms[perm[j]], y);
      y *= Rational(eps);
      acc += y;
    }
    acc *= coeff * front;
    return reinterpret_in(cone_embed(cone, GradedVector(L.space), acc), cone.shifted);
  };
  return s;
}

inline LInftyStructure cone_linfty(const DGLAMorphism& chi, int maxArity,
                                   const ConeOptions& opts = {}) {
  return cone_linfty(make_cone(chi), maxArity, opts);
}

/// Commuting square over chi and chi2: top: L -> L2, bottom: M -> M2 with
/// chi2 . top = bottom . chi. Induces a strict morphism between the cones.
struct ConeSquare {
  DGLAMorphism top;
  DGLAMorphism bottom;
};

inline LInftyLinearMorphism cone_functor_map(const LInftyStructure& src,
                                             const LInftyStructure& tgt,
                                             const ConeSquare& sq) {
  LInftyLinearMorphism phi;
  phi.source = &src;
  phi.target = &tgt;
  phi.f1 = GradedMap(src.space, tgt.space, 0);
  for (int i = 0; i < src.space.dim(); ++i) {
    const std::string& nm = src.space.name(i);
    GradedVector img(tgt.space);
    if (nm.rfind("l.", 0) == 0) {
      GradedVector v = sq.top.apply(basis_vector(sq.top.source->space, nm.substr(2)));
      for (const auto& [j, cf] : v.coords)
        img.add_term(tgt.space.index_of("l." + sq.top.target->space.name(j)), cf);
    } else {
      GradedVector v = sq.bottom.apply(basis_vector(sq.bottom.source->space, nm.substr(2)));
      for (const auto& [j, cf] : v.coords)
        img.add_term(tgt.space.index_of("m." + sq.bottom.target->space.name(j)), cf);
    }
    phi.f1.set_column(i, img);
  }
  phi.f1.validate_blocks();
  return phi;
}

/// Higher derived brackets of a DGLA:
///   Phi_1 = 0,
///   Phi_n(m_1..m_n) = 1/n! sum_s eps(s) [...[[d m_{s1}, m_{s2}], m_{s3}]...,
///   m_{sn}]
/// with eps the Koszul sign of the permutation. The odd family carries an
/// extra factor sgn(s).
struct DerivedBrackets {
  DGLAPtr algebra;
  bool odd = false;

  GradedVector value(const std::vector<GradedVector>& args) const {
    const DGLA& g = *algebra;
    int n = static_cast<int>(args.size());
    GradedVector out(g.space);
    if (n <= 1) return out;
    std::vector<int> picks(n);
    std::function<void(int, Rational)> rec = [&](int pos, Rational c) {
      if (pos == n) {
        std::vector<int> degs(n);
        for (int j = 0; j < n; ++j) degs[j] = g.space.degree(picks[j]);
        for (const auto& perm : all_permutations(n)) {
          Rational eps = Rational(koszul_sign(perm, degs));
          if (odd) eps *= Rational(permutation_parity_sign(perm));
          GradedVector y = g.d.apply(basis_vector(g.space, picks[perm[0]]));
          for (int j = 1; j < n; ++j) y = g.bracket(y, basis_vector(g.space, picks[perm[j]]));
          y *= c * eps;
          out += y;
        }
        return;
      }
      for (const auto& [i, cf] : args[pos].coords) {
        picks[pos] = i;
        rec(pos + 1, c * cf);
      }
    };
    rec(0, Rational(1) / Rational(factorial(n)));
    return out;
  }
};

inline DerivedBrackets derived_brackets(DGLAPtr g, bool odd = false) {
  return DerivedBrackets{std::move(g), odd};
}

}  // namespace mapcone

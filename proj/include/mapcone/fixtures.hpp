#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mapcone/dgla.hpp"
#include "mapcone/errors.hpp"
#include "mapcone/linalg.hpp"

namespace mapcone {

// ---------------------------------------------------------------------------
// Generic constructions
// ---------------------------------------------------------------------------

/// Restricts m to the span of the named basis elements. The subspace must be
/// closed under d and the bracket; a term escaping the span raises
/// FormatError naming the offender. Returns the inclusion morphism.
inline DGLAMorphism sub_dgla_inclusion(const DGLAPtr& m, const std::string& label,
                                       const std::vector<std::string>& names) {
  const GradedSpace& big = m->space;
  std::vector<BasisElement> basis;
  basis.reserve(names.size());
  for (const auto& nm : names) basis.push_back({nm, big.degree(big.index_of(nm))});
  GradedSpace sub(label, std::move(basis));

  auto restrict_vec = [&](const GradedVector& v, const std::string& what) {
    GradedVector out(sub);
    for (const auto& [i, c] : v.coords) {
      auto idx = sub.find(big.name(i));
      if (!idx)
        throw FormatError("subalgebra '" + label + "' is not closed: " + what +
                          " has a component along " + big.name(i));
      out.add_term(*idx, c);
    }
    return out;
  };

  DGLA g;
  g.space = sub;
  g.d = GradedMap(sub, sub, 1);
  int n = sub.dim();
  g.table.assign(n, std::vector<GradedVector>(n, GradedVector(sub)));
  GradedMap chi(sub, big, 0);
  for (int i = 0; i < n; ++i) {
    int bi = big.index_of(sub.name(i));
    chi.set_column(i, basis_vector(big, bi));
    g.d.set_column(i, restrict_vec(m->d.column(bi), "d(" + sub.name(i) + ")"));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int bi = big.index_of(sub.name(i));
      int bj = big.index_of(sub.name(j));
      g.table[i][j] = restrict_vec(m->bracket_basis(bi, bj),
                                   "[" + sub.name(i) + ", " + sub.name(j) + "]");
    }
  return {std::make_shared<DGLA>(std::move(g)), m, std::move(chi)};
}

/// Inclusion of the image of the differential back into m. The image is
/// always bracket-closed for an honest DGLA (Leibniz turns [dx, dy] into
/// d[x, dy]); the construction still verifies that and reports a witness
/// pair when it fails, so broken inputs surface here instead of later.
inline DGLAMorphism derived_bracket_fixture(const DGLAPtr& m) {
  const GradedSpace& big = m->space;
  int dim = big.dim();
  auto dense = [&](const GradedVector& v) {
    QRow r(dim, Rational(0));
    for (const auto& [i, c] : v.coords) r[i] = c;
    return r;
  };

  // Reduced row basis of the image, one block per degree.
  std::map<int, QMatrix> rows_by_degree;
  for (int i = 0; i < dim; ++i) {
    const GradedVector& v = m->d.column(i);
    if (v.coords.empty()) continue;
    if (!m->d.apply(v).coords.empty())
      throw ArgumentError("image of d is not d-closed: d(d(" + big.name(i) + ")) != 0");
    rows_by_degree[big.degree(i) + 1].push_back(dense(v));
  }
  int anon = 0;
  std::vector<BasisElement> basis;
  std::map<std::string, GradedVector> embed;        // sub name -> vector in m
  std::map<int, std::vector<std::string>> block;    // degree -> sub names, row order
  for (auto& [deg, rows] : rows_by_degree) {
    QMatrix reduced;
    for (auto& r : rref(std::move(rows)).mat) {
      bool zero = true;
      for (const Rational& c : r) zero = zero && c == 0;
      if (!zero) reduced.push_back(std::move(r));
    }
    rows = std::move(reduced);
    for (const QRow& r : rows) {
      int support = -1;
      bool unit = true;
      for (int j = 0; j < dim && unit; ++j) {
        if (r[j] == 0) continue;
        unit = support < 0 && r[j] == 1;
        support = j;
      }
      std::string nm = unit ? big.name(support) : "im" + std::to_string(anon++);
      GradedVector v(big);
      for (int j = 0; j < dim; ++j) v.add_term(j, r[j]);
      basis.push_back({nm, deg});
      embed.emplace(nm, std::move(v));
      block[deg].push_back(nm);
    }
  }

  GradedSpace sub(big.label() + ".im_d", std::move(basis));
  int n = sub.dim();
  DGLA g;
  g.space = sub;
  g.d = GradedMap(sub, sub, 1);  // d vanishes on the image of d
  g.table.assign(n, std::vector<GradedVector>(n, GradedVector(sub)));
  GradedMap chi(sub, big, 0);
  for (int i = 0; i < n; ++i) chi.set_column(i, embed.at(sub.name(i)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GradedVector w = m->bracket(chi.column(i), chi.column(j));
      if (w.coords.empty()) continue;
      int deg = sub.degree(i) + sub.degree(j);
      auto it = rows_by_degree.find(deg);
      auto coords = coordinates_in_span(it == rows_by_degree.end() ? QMatrix{} : it->second,
                                        dense(w));
      if (!coords)
        throw ArgumentError("image of d is not a subalgebra: [" + sub.name(i) + ", " +
                            sub.name(j) + "] escapes the image");
      GradedVector out(sub);
      const auto& names = block.at(deg);
      for (std::size_t k = 0; k < coords->size(); ++k)
        out.add_term(sub.index_of(names[k]), (*coords)[k]);
      g.table[i][j] = std::move(out);
    }
  return {std::make_shared<DGLA>(std::move(g)), m, std::move(chi)};
}

// ---------------------------------------------------------------------------
// Hochschild cochains of a small associative algebra
// ---------------------------------------------------------------------------

/// Finite-dimensional unital associative algebra by structure constants.
/// Basis names should be single characters; cochain names concatenate them.
struct AssocAlgebra {
  std::string label;
  std::vector<std::string> names;
  std::map<int, Rational> unit;
  std::vector<std::vector<std::map<int, Rational>>> table;  // table[i][j] = x_i * x_j

  int dim() const { return static_cast<int>(names.size()); }
};

inline void check_assoc(const AssocAlgebra& a) {
  int n = a.dim();
  auto mul = [&](const std::map<int, Rational>& x, const std::map<int, Rational>& y) {
    std::map<int, Rational> out;
    for (const auto& [i, c] : x)
      for (const auto& [j, d] : y)
        for (const auto& [k, e] : a.table[i][j]) {
          Rational& slot = out[k];
          slot += c * d * e;
          if (slot == 0) out.erase(k);
        }
    return out;
  };
  auto one = [&](int i) { return std::map<int, Rational>{{i, Rational(1)}}; };
  for (int i = 0; i < n; ++i) {
    if (mul(a.unit, one(i)) != one(i) || mul(one(i), a.unit) != one(i))
      throw ArgumentError("unit law fails at basis element " + a.names[i]);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (mul(one(i), mul(one(j), one(k))) != mul(mul(one(i), one(j)), one(k)))
          throw ArgumentError("associativity fails at (" + a.names[i] + ", " + a.names[j] +
                              ", " + a.names[k] + ")");
  }
}

/// K[e]/(e^2) with basis u = 1, e.
inline AssocAlgebra dual_numbers_algebra() {
  AssocAlgebra a;
  a.label = "dualnum";
  a.names = {"u", "e"};
  a.unit = {{0, Rational(1)}};
  a.table = {{{{0, Rational(1)}}, {{1, Rational(1)}}},
             {{{1, Rational(1)}}, {}}};
  return a;
}

/// K x K with idempotents p, q; the unit is p + q and (q) is an ideal with
/// a splitting K -> K x K, 1 -> p.
inline AssocAlgebra split_quotient_algebra() {
  AssocAlgebra a;
  a.label = "split";
  a.names = {"p", "q"};
  a.unit = {{0, Rational(1)}, {1, Rational(1)}};
  a.table = {{{{0, Rational(1)}}, {}},
             {{}, {{1, Rational(1)}}}};
  return a;
}

namespace detail {

struct Cochain {
  int arity = 0;
  std::vector<int> word;
  int out = 0;
};

inline std::string cochain_name(const AssocAlgebra& a, int arity, const std::vector<int>& w,
                                int out) {
  std::string s = "c" + std::to_string(arity) + "_";
  for (int i : w) s += a.names[i];
  s += "_";
  s += a.names[out];
  return s;
}

}  // namespace detail

/// Hom(A^{x n}, A) for n = 1..cap with the composition bracket and d = [mu, -]
/// for mu the multiplication cochain. Cochains of arity n sit in degree n-1.
/// Compositions landing above the arity cap are dropped; they span an ideal,
/// so the truncation is again a DGLA. Convention: inserting an n-cochain at
/// slot i costs (-1)^{(i-1)(n-1)}, and [f, h] = f o h - (-1)^{(m-1)(n-1)} h o f.
inline DGLAPtr hochschild_dgla(const AssocAlgebra& a, int cap) {
  if (cap < 2) throw ArgumentError("cochain arity cap must be at least 2");
  int ad = a.dim();
  std::vector<detail::Cochain> monos;
  std::vector<BasisElement> basis;
  {
    std::vector<int> w;
    for (int n = 1; n <= cap; ++n) {
      w.assign(n, 0);
      while (true) {
        for (int out = 0; out < ad; ++out) {
          monos.push_back({n, w, out});
          basis.push_back({detail::cochain_name(a, n, w, out), n - 1});
        }
        int pos = n - 1;
        while (pos >= 0 && w[pos] == ad - 1) w[pos--] = 0;
        if (pos < 0) break;
        ++w[pos];
      }
    }
  }
  GradedSpace space("hoch(" + a.label + ")", basis);
  int dim = space.dim();
  std::vector<detail::Cochain> by_index(dim);
  for (const auto& c : monos)
    by_index[space.index_of(detail::cochain_name(a, c.arity, c.word, c.out))] = c;

  // f o_i h is again a single basis cochain, or zero.
  auto insert_at = [&](const detail::Cochain& f, const detail::Cochain& h, int i) {
    if (h.out != f.word[i - 1] || f.arity + h.arity - 1 > cap) return -1;
    std::vector<int> w(f.word.begin(), f.word.begin() + (i - 1));
    w.insert(w.end(), h.word.begin(), h.word.end());
    w.insert(w.end(), f.word.begin() + i, f.word.end());
    return space.index_of(detail::cochain_name(a, f.arity + h.arity - 1, w, f.out));
  };
  auto circle = [&](const detail::Cochain& f, const detail::Cochain& h) {
    GradedVector out(space);
    for (int i = 1; i <= f.arity; ++i) {
      int idx = insert_at(f, h, i);
      if (idx < 0) continue;
      out.add_term(idx, Rational((i - 1) * (h.arity - 1) % 2 ? -1 : 1));
    }
    return out;
  };
  auto bracket = [&](const detail::Cochain& f, const detail::Cochain& h) {
    GradedVector out = circle(f, h);
    GradedVector ba = circle(h, f);
    ba *= Rational((f.arity - 1) * (h.arity - 1) % 2 ? 1 : -1);
    out += ba;
    return out;
  };

  DGLA g;
  g.space = space;
  g.table.assign(dim, std::vector<GradedVector>(dim, GradedVector(space)));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g.table[i][j] = bracket(by_index[i], by_index[j]);

  std::vector<std::pair<detail::Cochain, Rational>> mu;
  for (int i = 0; i < ad; ++i)
    for (int j = 0; j < ad; ++j)
      for (const auto& [k, c] : a.table[i][j]) mu.push_back({{2, {i, j}, k}, c});
  g.d = GradedMap(space, space, 1);
  for (int j = 0; j < dim; ++j) {
    GradedVector col(space);
    for (const auto& [mc, c] : mu) {
      GradedVector t = bracket(mc, by_index[j]);
      t *= c;
      col += t;
    }
    g.d.set_column(j, std::move(col));
  }
  g.d.validate_blocks();
  return std::make_shared<DGLA>(std::move(g));
}

/// The inclusion ker(alpha) -> Hoch(A) for a two-dimensional A with basis
/// {complement, ideal generator}: alpha reads off the complement coefficient
/// of f(iota, ..., iota). Also reports, per arity, the unique basis cochain
/// spanning the cokernel; its coefficient is the projection to coker(chi).
struct HochschildCone {
  DGLAMorphism chi;
  std::vector<std::string> coker_names;  // entry n-1 is the arity-n cochain
};

inline HochschildCone hochschild_cone_setup(const AssocAlgebra& a, int cap, int ideal_index) {
  if (a.dim() != 2) throw ArgumentError("kernel pair construction expects a 2-dimensional algebra");
  int kappa = 1 - ideal_index;
  DGLAPtr m = hochschild_dgla(a, cap);
  std::vector<std::string> excluded;
  for (int n = 1; n <= cap; ++n)
    excluded.push_back(detail::cochain_name(a, n, std::vector<int>(n, ideal_index), kappa));
  std::vector<std::string> names;
  for (int i = 0; i < m->space.dim(); ++i) {
    const std::string& nm = m->space.name(i);
    bool drop = false;
    for (const auto& ex : excluded) drop = drop || nm == ex;
    if (!drop) names.push_back(nm);
  }
  HochschildCone out{sub_dgla_inclusion(m, "ker(" + a.label + ")", names), std::move(excluded)};
  return out;
}

// ---------------------------------------------------------------------------
// Named fixtures
// ---------------------------------------------------------------------------

struct Fixture {
  std::string name;
  std::string summary;
  bool desk = true;  // small enough for exhaustive high-arity sweeps
  DGLAMorphism chi;
};

namespace detail {

inline Fixture fixture_abelian() {
  GradedSpace s("abelianM", {{"x", 0}, {"y", 1}});
  DGLA m = DGLABuilder(s).set_d("x", basis_vector(s, "y")).build();
  auto mp = std::make_shared<DGLA>(std::move(m));
  Fixture f{"abelian", "identity on a two-term complex, zero bracket", true,
            sub_dgla_inclusion(mp, "abelianL", {"x", "y"})};
  return f;
}

inline Fixture fixture_borel() {
  GradedSpace s("sl2", {{"e", 0}, {"f", 0}, {"h", 0}});
  GradedVector e = basis_vector(s, "e"), f = basis_vector(s, "f"), h = basis_vector(s, "h");
  DGLA m = DGLABuilder(s)
               .set_bracket("h", "e", Rational(2) * e)
               .set_bracket("h", "f", Rational(-2) * f)
               .set_bracket("e", "f", h)
               .build();
  auto mp = std::make_shared<DGLA>(std::move(m));
  return {"borel", "upper-triangular subalgebra inside sl2, all in degree 0", true,
          sub_dgla_inclusion(mp, "borel", {"h", "e"})};
}

inline Fixture fixture_dualnumbers() {
  // Closed 4-dimensional slice of the dual-numbers cochain pair: g is the
  // degree-0 cochain sending e to u, D = (e,e)->e, P = (e,e)->u.
  GradedSpace s("dualM", {{"g", 0}, {"D", 1}, {"P", 1}});
  DGLA m = DGLABuilder(s)
               .set_d("g", Rational(2) * basis_vector(s, "D"))
               .set_bracket("g", "D", basis_vector(s, "P"))
               .build();
  auto mp = std::make_shared<DGLA>(std::move(m));
  return {"dualnumbers", "desk-size slice of the dual-numbers cochain pair", true,
          sub_dgla_inclusion(mp, "dualL", {"D"})};
}

inline Fixture fixture_endo() {
  // Endomorphisms of the two-term complex w0 -> w1; Eab maps wb to wa.
  GradedSpace s("endoM", {{"Em", -1}, {"E00", 0}, {"E11", 0}, {"Ep", 1}});
  GradedVector em = basis_vector(s, "Em"), e00 = basis_vector(s, "E00");
  GradedVector e11 = basis_vector(s, "E11"), ep = basis_vector(s, "Ep");
  DGLA m = DGLABuilder(s)
               .set_d("E00", ep)
               .set_d("E11", -ep)
               .set_d("Em", e00 + e11)
               .set_bracket("E00", "Ep", -ep)
               .set_bracket("E11", "Ep", ep)
               .set_bracket("E00", "Em", em)
               .set_bracket("E11", "Em", -em)
               .set_bracket("Ep", "Em", e00 + e11)
               .build();
  auto mp = std::make_shared<DGLA>(std::move(m));
  return {"endo", "endomorphism algebra of a two-term complex; M has degree -1", true,
          sub_dgla_inclusion(mp, "endoL", {"E00", "E11", "Ep"})};
}

inline Fixture fixture_derived() {
  // Solvable g = span{s, n} tensored with an odd variable; d contracts it.
  GradedSpace sp("solv4", {{"st", -1}, {"nt", -1}, {"s", 0}, {"n", 0}});
  GradedVector s = basis_vector(sp, "s"), n = basis_vector(sp, "n"), nt = basis_vector(sp, "nt");
  DGLA m = DGLABuilder(sp)
               .set_d("st", s)
               .set_d("nt", n)
               .set_bracket("s", "n", n)
               .set_bracket("st", "n", nt)
               .set_bracket("nt", "s", -nt)
               .build();
  auto mp = std::make_shared<DGLA>(std::move(m));
  return {"derived", "image of d inside a solvable four-dimensional algebra", true,
          derived_bracket_fixture(mp)};
}

inline Fixture fixture_hochschild() {
  return {"hochschild", "full dual-numbers cochain pair up to arity 3", false,
          hochschild_cone_setup(dual_numbers_algebra(), 3, 1).chi};
}

inline Fixture fixture_split() {
  return {"split", "cochain pair of the split quotient K x K -> K", false,
          hochschild_cone_setup(split_quotient_algebra(), 3, 1).chi};
}

}  // namespace detail

inline std::vector<std::string> fixture_names() {
  return {"abelian", "borel", "dualnumbers", "endo", "derived", "hochschild", "split"};
}

inline std::vector<std::string> desk_fixture_names() {
  return {"abelian", "borel", "dualnumbers", "endo", "derived"};
}

inline Fixture fixture(const std::string& name) {
  if (name == "abelian") return detail::fixture_abelian();
  if (name == "borel") return detail::fixture_borel();
  if (name == "dualnumbers") return detail::fixture_dualnumbers();
  if (name == "endo") return detail::fixture_endo();
  if (name == "derived") return detail::fixture_derived();
  if (name == "hochschild") return detail::fixture_hochschild();
  if (name == "split") return detail::fixture_split();
  throw ArgumentError("unknown fixture '" + name + "'");
}

}  // namespace mapcone

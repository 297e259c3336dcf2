#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mapcone/graded.hpp"
#include "mapcone/report.hpp"

namespace mapcone {

/// Differential graded Lie algebra with explicit structure constants.
/// The bracket table stores [x_i, x_j] for every ordered basis pair.
struct DGLA {
  GradedSpace space;
  GradedMap d;  // degree +1
  std::vector<std::vector<GradedVector>> table;

  const GradedVector& bracket_basis(int i, int j) const { return table.at(i).at(j); }

  GradedVector bracket(const GradedVector& x, const GradedVector& y) const {
    if (x.space != space || y.space != space)
      throw ArgumentError("bracket arguments live in the wrong space");
    GradedVector out(space);
    for (const auto& [i, a] : x.coords)
      for (const auto& [j, b] : y.coords) {
        GradedVector t = table[i][j];
        t *= a * b;
        out += t;
      }
    return out;
  }

  GradedVector diff(const GradedVector& x) const { return d.apply(x); }

  GradedVector ad_power(const GradedVector& a, int n, GradedVector y) const {
    for (int k = 0; k < n; ++k) y = bracket(a, y);
    return y;
  }
};

using DGLAPtr = std::shared_ptr<const DGLA>;

/// Assembles a DGLA from differential and bracket entries. Entries may be
/// given for either factor order; an entry missing its mirror is completed
/// by graded antisymmetry [y,x] = -(-1)^{deg x deg y}[x,y]. Unspecified
/// entries default to zero. Degree blocks are validated.
class DGLABuilder {
 public:
  explicit DGLABuilder(GradedSpace space)
      : space_(std::move(space)), d_(space_, space_, 1) {}

  DGLABuilder& set_d(const std::string& name, GradedVector v) {
    d_.set_column(space_.index_of(name), std::move(v));
    return *this;
  }

  DGLABuilder& set_bracket(const std::string& a, const std::string& b, GradedVector v) {
    if (v.space != space_) throw ArgumentError("bracket value lives in the wrong space");
    entries_[{space_.index_of(a), space_.index_of(b)}] = std::move(v);
    return *this;
  }

  DGLA build() const {
    d_.validate_blocks();
    DGLA g;
    g.space = space_;
    g.d = d_;
    int n = space_.dim();
    g.table.assign(n, std::vector<GradedVector>(n, GradedVector(space_)));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& [ij, v] : entries_) {
      auto [i, j] = ij;
      for (const auto& [k, c] : v.coords) {
        if (space_.degree(k) != space_.degree(i) + space_.degree(j))
          throw FormatError("bracket entry [" + space_.name(i) + ", " + space_.name(j) +
                            "] -> " + space_.name(k) + " violates degree additivity");
      }
      g.table[i][j] = v;
      given[i][j] = true;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (given[i][j] || !given[j][i]) continue;
        GradedVector v = g.table[j][i];
        int s = (space_.degree(i) % 2 != 0 && space_.degree(j) % 2 != 0) ? 1 : -1;
        v *= Rational(s);
        g.table[i][j] = std::move(v);
      }
    return g;
  }

 private:
  GradedSpace space_;
  GradedMap d_;
  std::map<std::pair<int, int>, GradedVector> entries_;
};

/// Exhaustive verification of the DGLA laws on the basis: d^2 = 0, graded
/// antisymmetry, the Leibniz rule, and graded Jacobi.
inline CheckReport check_dgla(const DGLA& g) {
  CheckReport rep;
  const GradedSpace& s = g.space;
  int n = s.dim();
  auto sign = [](int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); };
  for (int i = 0; i < n; ++i) {
    GradedVector v = g.d.apply(g.d.column(i));
    if (!v.is_zero()) rep.add("d^2", s.name(i), v.str());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GradedVector r = g.table[i][j] + sign(s.degree(i) * s.degree(j)) * g.table[j][i];
      if (!r.is_zero()) rep.add("antisymmetry", s.name(i) + ", " + s.name(j), r.str());
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      GradedVector lhs = g.d.apply(g.table[i][j]);
      GradedVector rhs = g.bracket(g.d.column(i), basis_vector(s, j)) +
                         sign(s.degree(i)) * g.bracket(basis_vector(s, i), g.d.column(j));
      if (!(lhs == rhs))
        rep.add("leibniz", s.name(i) + ", " + s.name(j), (lhs - rhs).str());
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GradedVector lhs = g.bracket(basis_vector(s, i), g.table[j][k]);
        GradedVector rhs = g.bracket(g.table[i][j], basis_vector(s, k)) +
                           sign(s.degree(i) * s.degree(j)) *
                               g.bracket(basis_vector(s, j), g.table[i][k]);
        if (!(lhs == rhs))
          rep.add("jacobi", s.name(i) + ", " + s.name(j) + ", " + s.name(k),
                  (lhs - rhs).str());
      }
  return rep;
}

/// Degree-0 map of DGLAs.
struct DGLAMorphism {
  DGLAPtr source, target;
  GradedMap map;  // degree 0

  GradedVector apply(const GradedVector& v) const { return map.apply(v); }
};

inline CheckReport check_dgla_morphism(const DGLAMorphism& f) {
  CheckReport rep;
  const GradedSpace& s = f.source->space;
  if (f.map.degree != 0) rep.add("degree", "-", "morphism must have degree 0");
  for (int i = 0; i < s.dim(); ++i) {
    GradedVector lhs = f.map.apply(f.source->d.column(i));
    GradedVector rhs = f.target->d.apply(f.map.column(i));
    if (!(lhs == rhs)) rep.add("chain map", s.name(i), (lhs - rhs).str());
  }
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      GradedVector lhs = f.map.apply(f.source->table[i][j]);
      GradedVector rhs = f.target->bracket(f.map.column(i), f.map.column(j));
      if (!(lhs == rhs))
        rep.add("bracket preservation", s.name(i) + ", " + s.name(j), (lhs - rhs).str());
    }
  return rep;
}

}  // namespace mapcone

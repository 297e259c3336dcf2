#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mapcone/linalg.hpp"
#include "mapcone/report.hpp"
#include "mapcone/rational.hpp"

namespace mapcone {

/// Local ring K + m with m nilpotent, described by a basis of the maximal
/// ideal m and the multiplication table of basis elements inside m. The unit
/// acts implicitly. weight[i] is the largest k with the i-th monomial in m^k;
/// the basis is required to be adapted, i.e. m^k is spanned by the basis
/// monomials of weight >= k.
struct ArtinAlgebra {
  std::string label;
  std::vector<std::string> monomials;
  std::vector<std::vector<std::map<int, Rational>>> table;
  std::vector<int> weight;
  int nil_index = 1;  // least N with m^N = 0

  int dim() const { return static_cast<int>(monomials.size()); }

  int find(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
      if (monomials[i] == name) return i;
    throw ArgumentError("unknown monomial '" + name + "' in " + label);
  }
};

using IdealElement = std::map<int, Rational>;  // coordinates over the monomial basis

inline IdealElement artin_mul(const ArtinAlgebra& a, const IdealElement& x,
                              const IdealElement& y) {
  IdealElement out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y)
      for (const auto& [k, ck] : a.table[i][j]) {
        Rational& r = out[k];
        r += ci * cj * ck;
        if (r == 0) out.erase(k);
      }
  return out;
}

/// Row spans of the powers m^1, m^2, ...; index k-1 holds m^k. The last
/// entry is the first zero power.
inline std::vector<QMatrix> artin_power_spans(const ArtinAlgebra& a) {
  std::vector<QMatrix> spans;
  int n = a.dim();
  QMatrix current;
  for (int i = 0; i < n; ++i) {
    QRow row(n, Rational(0));
    row[i] = 1;
    current.push_back(row);
  }
  while (true) {
    spans.push_back(current);
    if (current.empty()) break;
    QMatrix next;
    for (int i = 0; i < n; ++i)
      for (const auto& row : current) {
        QRow prod(n, Rational(0));
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
          if (row[j] == 0) continue;
          for (const auto& [k, ck] : a.table[i][j]) {
            prod[k] += row[j] * ck;
            nonzero = true;
          }
        }
        if (nonzero) next.push_back(std::move(prod));
      }
    RrefResult r = rref(next);
    QMatrix reduced;
    for (std::size_t p = 0; p < r.pivots.size(); ++p) reduced.push_back(r.mat[p]);
    if (spans.size() > 64) throw ArgumentError("ideal of " + a.label + " is not nilpotent");
    current = std::move(reduced);
  }
  return spans;
}

/// Fills in weight and nil_index from the power filtration and verifies that
/// the monomial basis is adapted to it.
inline void finalize_artin(ArtinAlgebra& a) {
  auto spans = artin_power_spans(a);
  a.nil_index = static_cast<int>(spans.size());
  int n = a.dim();
  a.weight.assign(n, 1);
  for (int i = 0; i < n; ++i) {
    QRow e(n, Rational(0));
    e[i] = 1;
    for (std::size_t k = 1; k < spans.size(); ++k)
      if (in_span(spans[k], e)) a.weight[i] = static_cast<int>(k) + 1;
  }
  for (std::size_t k = 0; k < spans.size(); ++k) {
    std::size_t adapted = 0;
    for (int i = 0; i < n; ++i)
      if (a.weight[i] >= static_cast<int>(k) + 1) ++adapted;
    if (adapted != spans[k].size())
      throw ArgumentError("monomial basis of " + a.label +
                          " is not adapted to the power filtration");
  }
}

inline CheckReport check_artin(const ArtinAlgebra& a) {
  CheckReport report;
  int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (a.table[i][j] != a.table[j][i])
        report.add("commutativity", a.monomials[i] + "*" + a.monomials[j], "products differ");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        IdealElement ei{{i, Rational(1)}}, ej{{j, Rational(1)}}, ek{{k, Rational(1)}};
        IdealElement left = artin_mul(a, artin_mul(a, ei, ej), ek);
        IdealElement right = artin_mul(a, ei, artin_mul(a, ej, ek));
        if (left != right)
          report.add("associativity",
                     a.monomials[i] + "*" + a.monomials[j] + "*" + a.monomials[k],
                     "regroupings differ");
      }
  auto spans = artin_power_spans(a);
  if (static_cast<int>(spans.size()) != a.nil_index)
    report.add("nilpotency index", a.label,
               "stored " + std::to_string(a.nil_index) + ", computed " +
                   std::to_string(spans.size()));
  return report;
}

inline std::string monomial_name(const std::vector<std::string>& vars,
                                 const std::vector<int>& exps) {
  std::string out;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (exps[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (exps[v] > 1) out += "^" + std::to_string(exps[v]);
  }
  return out;
}

/// K[vars] modulo the monomial ideal generated by the given exponent vectors.
/// Every variable must be bounded by a pure power among the generators, so
/// the quotient is finite-dimensional. Basis: surviving monomials of positive
/// degree, ordered by total degree then name.
inline ArtinAlgebra artin_monomial_quotient(const std::string& label,
                                            const std::vector<std::string>& vars,
                                            const std::vector<std::vector<int>>& relations) {
  int r = static_cast<int>(vars.size());
  std::vector<int> bound(r, -1);
  for (const auto& rel : relations) {
    if (static_cast<int>(rel.size()) != r) throw ArgumentError("relation arity mismatch");
    int support = -1;
    bool pure = true;
    for (int v = 0; v < r; ++v)
      if (rel[v] > 0) {
        if (support >= 0) pure = false;
        support = v;
      }
    if (pure && support >= 0)
      if (bound[support] < 0 || rel[support] < bound[support]) bound[support] = rel[support];
  }
  for (int v = 0; v < r; ++v)
    if (bound[v] < 0)
      throw ArgumentError("variable " + vars[v] + " has no pure-power relation");

  auto divisible = [&](const std::vector<int>& e) {
    for (const auto& rel : relations) {
      bool div = true;
      for (int v = 0; v < r; ++v)
        if (e[v] < rel[v]) {
          div = false;
          break;
        }
      if (div) return true;
    }
    return false;
  };

  std::vector<std::vector<int>> exps;
  std::vector<int> e(r, 0);
  std::function<void(int)> enumerate = [&](int v) {
    if (v == r) {
      int total = 0;
      for (int x : e) total += x;
      if (total > 0 && !divisible(e)) exps.push_back(e);
      return;
    }
    for (e[v] = 0; e[v] < bound[v]; ++e[v]) enumerate(v + 1);
    e[v] = 0;
  };
  enumerate(0);

  std::sort(exps.begin(), exps.end(), [&](const auto& x, const auto& y) {
    int tx = 0, ty = 0;
    for (int a : x) tx += a;
    for (int a : y) ty += a;
    if (tx != ty) return tx < ty;
    return monomial_name(vars, x) < monomial_name(vars, y);
  });

  ArtinAlgebra a;
  a.label = label;
  for (const auto& ex : exps) a.monomials.push_back(monomial_name(vars, ex));
  int n = a.dim();
  a.table.assign(n, std::vector<std::map<int, Rational>>(n));
  auto index_of = [&](const std::vector<int>& ex) {
    for (int i = 0; i < n; ++i)
      if (exps[i] == ex) return i;
    return -1;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<int> prod(r);
      bool overflow = false;
      for (int v = 0; v < r; ++v) {
        prod[v] = exps[i][v] + exps[j][v];
        if (prod[v] >= 2 * bound[v]) overflow = true;
      }
      if (overflow || divisible(prod)) continue;
      int k = index_of(prod);
      if (k >= 0) a.table[i][j][k] = 1;
    }
  finalize_artin(a);
  return a;
}

}  // namespace mapcone

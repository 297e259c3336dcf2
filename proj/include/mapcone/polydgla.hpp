#pragma once

#include <map>
#include <utility>

#include "mapcone/dgla.hpp"

namespace mapcone {

/// Element of M[t, dt] truncated at a t-degree cap, for a DGLA M. Terms are
/// stored as (t-power, dt-flag) -> coefficient in M, with the one-form part
/// normalized as t^i dt (x). An element of the form t^i (x) has the degree
/// of x; t^i dt (x) has degree deg x + 1.
struct PolyElement {
  DGLAPtr base;
  int cap = 0;
  std::map<std::pair<int, int>, GradedVector> parts;

  PolyElement() = default;
  PolyElement(DGLAPtr b, int cap_) : base(std::move(b)), cap(cap_) {}

  bool is_zero() const { return parts.empty(); }

  void add_term(int tpow, int dt, GradedVector v) {
    if (v.is_zero()) return;
    if (tpow < 0 || dt < 0 || dt > 1) throw ArgumentError("malformed polynomial term");
    if (tpow > cap)
      throw CapacityError("t-degree " + std::to_string(tpow) + " exceeds cap " +
                              std::to_string(cap), tpow);
    auto key = std::make_pair(tpow, dt);
    auto it = parts.find(key);
    if (it == parts.end()) {
      parts.emplace(key, std::move(v));
    } else {
      it->second += v;
      if (it->second.is_zero()) parts.erase(it);
    }
  }

  GradedVector part(int tpow, int dt) const {
    auto it = parts.find({tpow, dt});
    if (it != parts.end()) return it->second;
    return GradedVector(base->space);
  }

  PolyElement& operator+=(const PolyElement& o) {
    require_compatible(o);
    for (const auto& [k, v] : o.parts) add_term(k.first, k.second, v);
    return *this;
  }
  PolyElement& operator-=(const PolyElement& o) {
    require_compatible(o);
    for (const auto& [k, v] : o.parts) {
      GradedVector w = v;
      w *= Rational(-1);
      add_term(k.first, k.second, std::move(w));
    }
    return *this;
  }
  PolyElement& operator*=(const Rational& c) {
    if (c == 0) {
      parts.clear();
      return *this;
    }
    for (auto& [k, v] : parts) v *= c;
    return *this;
  }
  friend PolyElement operator+(PolyElement a, const PolyElement& b) { return a += b; }
  friend PolyElement operator-(PolyElement a, const PolyElement& b) { return a -= b; }
  friend PolyElement operator*(const Rational& c, PolyElement p) { return p *= c; }

  friend bool operator==(const PolyElement& a, const PolyElement& b) {
    return a.parts == b.parts;
  }

  /// Degree of a homogeneous element (dt counts +1); throws on mixed.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [k, v] : parts) {
      auto vd = v.homogeneous_degree();
      if (!vd) continue;
      int d = *vd + k.second;
      if (!deg)
        deg = d;
      else if (*deg != d)
        throw ArgumentError("polynomial element is not degree-homogeneous");
    }
    return deg;
  }

  void require_compatible(const PolyElement& o) const {
    if (base->space != o.base->space)
      throw ArgumentError("polynomial elements over different algebras");
  }
};

inline PolyElement poly_zero(DGLAPtr base, int cap) { return PolyElement(std::move(base), cap); }

inline PolyElement poly_term(DGLAPtr base, int cap, int tpow, int dt, GradedVector v) {
  PolyElement p(std::move(base), cap);
  p.add_term(tpow, dt, std::move(v));
  return p;
}

/// d(t^i x) = i t^{i-1} dt x + t^i dx;  d(t^i dt x) = -t^i dt dx.
inline PolyElement poly_d(const PolyElement& p) {
  PolyElement out(p.base, p.cap);
  for (const auto& [k, v] : p.parts) {
    auto [tpow, dt] = k;
    if (dt == 0) {
      if (tpow > 0) {
        GradedVector w = v;
        w *= Rational(tpow);
        out.add_term(tpow - 1, 1, std::move(w));
      }
      out.add_term(tpow, 0, p.base->d.apply(v));
    } else {
      GradedVector w = p.base->d.apply(v);
      w *= Rational(-1);
      out.add_term(tpow, 1, std::move(w));
    }
  }
  return out;
}

/// [f dt^a x, g dt^b y] = (-1)^{deg x * b} f g dt^{a+b} [x, y]; terms with
/// two dt factors vanish. Arguments must have homogeneous M-coefficients,
/// which is all the library produces.
inline PolyElement poly_bracket(const PolyElement& p, const PolyElement& q) {
  p.require_compatible(q);
  PolyElement out(p.base, std::max(p.cap, q.cap));
  for (const auto& [k1, x] : p.parts)
    for (const auto& [k2, y] : q.parts) {
      if (k1.second + k2.second > 1) continue;
      GradedVector v = p.base->bracket(x, y);
      if (v.is_zero()) continue;
      if (k2.second != 0) {
        auto dx = x.homogeneous_degree();
        if (dx && *dx % 2 != 0) v *= Rational(-1);
      }
      out.add_term(k1.first + k2.first, k1.second + k2.second, std::move(v));
    }
  return out;
}

/// Multiplication by a scalar polynomial sum_i c_i t^i (no dt part).
inline PolyElement poly_mul(const std::map<int, Rational>& scalar_poly, const PolyElement& p) {
  PolyElement out(p.base, p.cap);
  for (const auto& [i, c] : scalar_poly)
    for (const auto& [k, v] : p.parts) {
      GradedVector w = v;
      w *= c;
      out.add_term(k.first + i, k.second, std::move(w));
    }
  return out;
}

/// Evaluation at t = a, killing dt: a DGLA morphism M[t,dt] -> M.
inline GradedVector evaluate_at(const PolyElement& p, const Rational& a) {
  GradedVector out(p.base->space);
  for (const auto& [k, v] : p.parts) {
    if (k.second != 0) continue;
    Rational pw = 1;
    for (int i = 0; i < k.first; ++i) pw *= a;
    GradedVector w = v;
    w *= pw;
    out += w;
  }
  return out;
}

/// Definite integral over [a, b] of the one-form part:
/// int_a^b (t^i dt) x = (b^{i+1} - a^{i+1})/(i+1) x. Polynomial terms do not
/// contribute. Degree -1 with respect to the total grading.
inline GradedVector integrate(const PolyElement& p, const Rational& a, const Rational& b) {
  GradedVector out(p.base->space);
  for (const auto& [k, v] : p.parts) {
    if (k.second != 1) continue;
    Rational pa = 1, pb = 1;
    for (int i = 0; i <= k.first; ++i) {
      pa *= a;
      pb *= b;
    }
    GradedVector w = v;
    w *= (pb - pa) / Rational(k.first + 1);
    out += w;
  }
  return out;
}

/// Primitive of the one-form part vanishing at 0: t^i dt x -> t^{i+1}/(i+1) x.
inline PolyElement integrate_from_zero(const PolyElement& p) {
  PolyElement out(p.base, p.cap);
  for (const auto& [k, v] : p.parts) {
    if (k.second != 1) continue;
    GradedVector w = v;
    w *= Rational(1) / Rational(k.first + 1);
    out.add_term(k.first + 1, 0, std::move(w));
  }
  return out;
}

}  // namespace mapcone

#pragma once

#include <functional>
#include <vector>

#include "mapcone/koszul.hpp"

namespace mapcone {

/// Multilinear map of fixed arity and degree, defined by its values on
/// ordered tuples of source basis elements and extended multilinearly.
struct MultilinearMap {
  GradedSpace source, target;
  int arity = 1;
  int degree = 0;
  std::function<GradedVector(const std::vector<int>&)> on_basis;

  GradedVector eval_basis(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity)
      throw ArgumentError("tuple length does not match map arity");
    return on_basis(tuple);
  }

  GradedVector eval(const std::vector<GradedVector>& args) const {
    if (static_cast<int>(args.size()) != arity)
      throw ArgumentError("argument count does not match map arity");
    GradedVector out(target);
    std::vector<int> tuple(arity);
    Rational coeff;
    auto rec = [&](auto&& self, int slot, const Rational& acc) -> void {
      if (slot == arity) {
        GradedVector v = on_basis(tuple);
        v *= acc;
        out += v;
        return;
      }
      if (args[slot].space != source) throw ArgumentError("argument from the wrong space");
      for (const auto& [i, c] : args[slot].coords) {
        tuple[slot] = i;
        self(self, slot + 1, acc * c);
      }
    };
    rec(rec, 0, Rational(1));
    return out;
  }
};

/// The decalage sign for a k-linear degree-i map evaluated on v_1..v_k:
/// (-1)^{k*i + sum_j (k-j)*deg(v_j)} with unshifted degrees.
inline int decalage_sign(int arity, int map_degree, const std::vector<int>& unshifted_degrees) {
  int e = arity * map_degree;
  for (int j = 0; j < arity; ++j) e += (arity - 1 - j) * unshifted_degrees[j];
  return e % 2 == 0 ? 1 : -1;
}

/// Transport f: V^{(x)k} -> W of degree i to V[1]^{(x)k} -> W[l] of degree
/// i + k - l. Basis names identify V with V[1] and W with W[l].
inline MultilinearMap decalage(const MultilinearMap& f, int target_shift = 1) {
  MultilinearMap g;
  g.source = f.source.shifted(1);
  g.target = f.target.shifted(target_shift);
  g.arity = f.arity;
  g.degree = f.degree + f.arity - target_shift;
  GradedSpace src = f.source;
  GradedSpace tgt_shifted = g.target;
  int arity = f.arity;
  int deg = f.degree;
  auto base = f.on_basis;
  g.on_basis = [src, tgt_shifted, arity, deg, base](const std::vector<int>& tuple) {
    std::vector<int> degs(arity);
    for (int j = 0; j < arity; ++j) degs[j] = src.degree(tuple[j]);
    int s = decalage_sign(arity, deg, degs);
    GradedVector v = base(tuple);
    GradedVector out = reinterpret_in(v, tgt_shifted);
    out *= Rational(s);
    return out;
  };
  return g;
}

/// Inverse transport: g on the shifted spaces back to the unshifted ones.
/// Uses the same sign (the decalage sign is an involution).
inline MultilinearMap decalage_inverse(const MultilinearMap& g, int target_shift = 1) {
  MultilinearMap f;
  f.source = g.source.shifted(-1);
  f.target = g.target.shifted(-target_shift);
  f.arity = g.arity;
  f.degree = g.degree - g.arity + target_shift;
  GradedSpace unshifted_src = f.source;
  GradedSpace unshifted_tgt = f.target;
  int arity = g.arity;
  int deg = f.degree;
  auto base = g.on_basis;
  f.on_basis = [unshifted_src, unshifted_tgt, arity, deg, base](const std::vector<int>& tuple) {
    std::vector<int> degs(arity);
    for (int j = 0; j < arity; ++j) degs[j] = unshifted_src.degree(tuple[j]);
    int s = decalage_sign(arity, deg, degs);
    GradedVector v = base(tuple);
    GradedVector out = reinterpret_in(v, unshifted_tgt);
    out *= Rational(s);
    return out;
  };
  return f;
}

}  // namespace mapcone

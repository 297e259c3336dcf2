#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mapcone/errors.hpp"
#include "mapcone/rational.hpp"

namespace mapcone {

struct BasisElement {
  std::string name;
  int degree = 0;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

/// Finite-dimensional graded vector space with named homogeneous basis.
/// The basis is kept sorted lexicographically on (degree, name); every
/// canonical ordering in the library derives from this order. Immutable and
/// cheap to copy.
class GradedSpace {
 public:
  GradedSpace() : data_(std::make_shared<Data>()) {}

  GradedSpace(std::string label, std::vector<BasisElement> basis) {
    auto d = std::make_shared<Data>();
    d->label = std::move(label);
    std::sort(basis.begin(), basis.end(), [](const BasisElement& a, const BasisElement& b) {
      return a.degree != b.degree ? a.degree < b.degree : a.name < b.name;
    });
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (!d->index.emplace(basis[i].name, static_cast<int>(i)).second)
        throw FormatError("duplicate basis name '" + basis[i].name + "' in space '" + d->label + "'");
    }
    d->basis = std::move(basis);
    data_ = std::move(d);
  }

  int dim() const { return static_cast<int>(data_->basis.size()); }
  const std::string& label() const { return data_->label; }
  const BasisElement& basis(int i) const { return data_->basis.at(i); }
  int degree(int i) const { return data_->basis.at(i).degree; }
  const std::string& name(int i) const { return data_->basis.at(i).name; }

  std::optional<int> find(const std::string& name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  int index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw FormatError("unknown basis name '" + name + "' in space '" + data_->label + "'");
    return *i;
  }

  /// The shift V[k]: same basis names with degree(v) - k. Basis order is
  /// preserved because every degree moves by the same amount.
  GradedSpace shifted(int k) const {
    std::vector<BasisElement> b = data_->basis;
    for (auto& e : b) e.degree -= k;
    std::string lbl = data_->label + "[" + std::to_string(k) + "]";
    return GradedSpace(std::move(lbl), std::move(b));
  }

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.data_ == b.data_ || a.data_->basis == b.data_->basis;
  }
  friend bool operator!=(const GradedSpace& a, const GradedSpace& b) { return !(a == b); }

 private:
  struct Data {
    std::string label;
    std::vector<BasisElement> basis;
    std::map<std::string, int> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Sparse vector: basis index -> nonzero rational coordinate.
struct GradedVector {
  GradedSpace space;
  std::map<int, Rational> coords;

  GradedVector() = default;
  explicit GradedVector(GradedSpace s) : space(std::move(s)) {}

  bool is_zero() const { return coords.empty(); }

  void add_term(int i, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = coords.emplace(i, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) coords.erase(it);
    }
  }

  Rational coord(int i) const {
    auto it = coords.find(i);
    return it == coords.end() ? Rational(0) : it->second;
  }

  /// Degree of a homogeneous vector; nullopt for 0; throws on mixed support.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [i, c] : coords) {
      int d = space.degree(i);
      if (!deg)
        deg = d;
      else if (*deg != d)
        throw ArgumentError("vector is not degree-homogeneous");
    }
    return deg;
  }

  GradedVector& operator+=(const GradedVector& o) {
    require_same_space(o);
    for (const auto& [i, c] : o.coords) add_term(i, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    require_same_space(o);
    for (const auto& [i, c] : o.coords) add_term(i, -c);
    return *this;
  }
  GradedVector& operator*=(const Rational& s) {
    if (s == 0) {
      coords.clear();
      return *this;
    }
    for (auto& [i, c] : coords) c *= s;
    return *this;
  }

  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(const Rational& s, GradedVector v) { return v *= s; }
  friend GradedVector operator-(GradedVector v) {
    for (auto& [i, c] : v.coords) c = -c;
    return v;
  }

  friend bool operator==(const GradedVector& a, const GradedVector& b) {
    return a.space == b.space && a.coords == b.coords;
  }

  void require_same_space(const GradedVector& o) const {
    if (space != o.space) throw ArgumentError("graded vectors live in different spaces");
  }

  std::string str() const {
    if (coords.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : coords) {
      if (!first) out += c > 0 ? " + " : " - ";
      Rational a = (!first && c < 0) ? Rational(-c) : c;
      if (first && c < 0) {
        out += "-";
        a = -c;
      }
      if (a != 1) out += rational_str(a) + " ";
      out += space.name(i);
      first = false;
    }
    return out;
  }
};

inline GradedVector basis_vector(const GradedSpace& s, int i) {
  GradedVector v(s);
  v.add_term(i, Rational(1));
  return v;
}

inline GradedVector basis_vector(const GradedSpace& s, const std::string& name) {
  return basis_vector(s, s.index_of(name));
}

/// Reinterpret a vector in a space sharing the same basis names (e.g. a
/// shift of the original space). Coordinates carry over by name.
inline GradedVector reinterpret_in(const GradedVector& v, const GradedSpace& target) {
  GradedVector out(target);
  for (const auto& [i, c] : v.coords) out.add_term(target.index_of(v.space.name(i)), c);
  return out;
}

/// Degree-homogeneous linear map stored column-wise on the source basis.
struct GradedMap {
  GradedSpace source, target;
  int degree = 0;
  std::vector<GradedVector> columns;

  GradedMap() = default;
  GradedMap(GradedSpace src, GradedSpace tgt, int deg)
      : source(std::move(src)), target(std::move(tgt)), degree(deg),
        columns(source.dim(), GradedVector(target)) {}

  void set_column(int i, GradedVector v) {
    if (v.space != target) throw ArgumentError("column lives in the wrong space");
    columns.at(i) = std::move(v);
  }

  const GradedVector& column(int i) const { return columns.at(i); }

  GradedVector apply(const GradedVector& v) const {
    if (v.space != source) throw ArgumentError("map applied to vector from the wrong space");
    GradedVector out(target);
    for (const auto& [i, c] : v.coords) {
      GradedVector t = columns[i];
      t *= c;
      out += t;
    }
    return out;
  }

  /// Every column must be homogeneous of degree source.degree(i) + degree.
  void validate_blocks() const {
    for (int i = 0; i < source.dim(); ++i) {
      for (const auto& [j, c] : columns[i].coords) {
        if (target.degree(j) != source.degree(i) + degree)
          throw FormatError("map entry " + source.name(i) + " -> " + target.name(j) +
                            " violates degree " + std::to_string(degree));
      }
    }
  }
};

inline GradedMap graded_map(GradedSpace src, GradedSpace tgt, int degree,
                            const std::map<std::string, GradedVector>& entries,
                            bool validate = true) {
  GradedMap m(std::move(src), std::move(tgt), degree);
  for (const auto& [name, v] : entries) m.set_column(m.source.index_of(name), v);
  if (validate) m.validate_blocks();
  return m;
}

}  // namespace mapcone

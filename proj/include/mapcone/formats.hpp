#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mapcone/artin.hpp"
#include "mapcone/dgla.hpp"
#include "mapcone/errors.hpp"
#include "mapcone/koszul.hpp"
#include "mapcone/linfty.hpp"

namespace mapcone {

// Text documents hold dgla / morphism / artin / element blocks. Names may
// not contain whitespace or the punctuation [ ] , : used by the grammar.
// Parse errors throw FormatError with the 1-based line number; serialization
// is canonical, so serialize(parse(serialize(x))) is byte-identical.

struct ElementTerm {
  std::string basis;
  std::string monomial;
  Rational coeff;
};

struct ElementDecl {
  std::string label;
  std::vector<ElementTerm> terms;
};

struct Document {
  std::vector<std::string> dgla_order;
  std::map<std::string, DGLAPtr> dglas;
  std::vector<std::string> morphism_order;
  std::map<std::string, DGLAMorphism> morphisms;
  std::vector<std::string> artin_order;
  std::map<std::string, ArtinAlgebra> artins;
  std::vector<std::string> element_order;
  std::map<std::string, ElementDecl> elements;
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::string padded;
  for (char c : line) {
    if (c == '#') break;
    if (c == '[' || c == ']' || c == ',' || c == ':') {
      padded += ' ';
      padded += c;
      padded += ' ';
    } else {
      padded += c;
    }
  }
  std::istringstream in(padded);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

using NameResolver = std::function<std::optional<int>(const std::string&)>;

/// Parses "0" or a signed sum of terms "coeff? name".
inline std::map<int, Rational> parse_lincomb(const std::vector<std::string>& toks,
                                             std::size_t from, const NameResolver& resolve,
                                             int line) {
  std::map<int, Rational> out;
  if (from >= toks.size()) throw FormatError("missing linear combination", line);
  if (toks[from] == "0" && from + 1 == toks.size()) return out;
  bool first = true;
  std::size_t i = from;
  while (i < toks.size()) {
    int sign = 1;
    if (toks[i] == "+" || toks[i] == "-") {
      sign = toks[i] == "-" ? -1 : 1;
      ++i;
    } else if (!first) {
      throw FormatError("expected '+' or '-' before '" + toks[i] + "'", line);
    }
    if (i >= toks.size()) throw FormatError("dangling sign in linear combination", line);
    Rational coeff(1);
    if (auto r = parse_rational(toks[i])) {
      coeff = *r;
      ++i;
      if (i >= toks.size())
        throw FormatError("coefficient without a basis name", line);
    }
    auto idx = resolve(toks[i]);
    if (!idx) throw FormatError("unknown name '" + toks[i] + "'", line);
    Rational& slot = out[*idx];
    slot += Rational(sign) * coeff;
    if (slot == 0) out.erase(*idx);
    ++i;
    first = false;
  }
  return out;
}

/// Canonical rendering: terms in index order, unit coefficients elided,
/// signs as separators, lone leading minus.
inline std::string lincomb_str(const std::map<int, Rational>& terms,
                               const std::function<std::string(int)>& name) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : terms) {
    Rational a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) s += "- ";
    } else {
      s += neg ? " - " : " + ";
    }
    if (a != 1) {
      s += rational_str(a);
      s += " ";
    }
    s += name(i);
    first = false;
  }
  return s;
}

inline std::map<int, Rational> vec_terms(const GradedVector& v) {
  return std::map<int, Rational>(v.coords.begin(), v.coords.end());
}

struct RawLine {
  int line = 0;
  std::vector<std::string> toks;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

inline Document parse_document(const std::string& text) {
  Document doc;
  std::vector<detail::RawLine> lines;
  {
    std::istringstream in(text);
    std::string line;
    int num = 0;
    while (std::getline(in, line)) {
      ++num;
      auto toks = detail::tokenize(line);
      if (!toks.empty()) lines.push_back({num, std::move(toks)});
    }
  }

  std::size_t i = 0;
  auto block = [&](const char* kind) {
    std::vector<detail::RawLine> body;
    while (i < lines.size() && lines[i].toks[0] != "end") body.push_back(lines[i++]);
    if (i >= lines.size())
      throw FormatError(std::string("unterminated ") + kind + " block", body.empty() ? 0 : body.front().line);
    ++i;  // consume "end"
    return body;
  };

  while (i < lines.size()) {
    const auto& head = lines[i];
    const auto& toks = head.toks;
    if (toks[0] == "dgla") {
      if (toks.size() != 2) throw FormatError("expected: dgla <label>", head.line);
      std::string label = toks[1];
      ++i;
      auto body = block("dgla");
      std::vector<BasisElement> basis;
      std::vector<detail::RawLine> defs;
      for (const auto& rl : body) {
        if (rl.toks[0] == "basis") {
          if (rl.toks.size() != 3) throw FormatError("expected: basis <name> <degree>", rl.line);
          try {
            basis.push_back({rl.toks[1], std::stoi(rl.toks[2])});
          } catch (const std::exception&) {
            throw FormatError("bad degree '" + rl.toks[2] + "'", rl.line);
          }
        } else {
          defs.push_back(rl);
        }
      }
      GradedSpace space(label, std::move(basis));
      auto resolve = [&space](const std::string& nm) { return space.find(nm); };
      auto to_vec = [&](const std::map<int, Rational>& terms) {
        GradedVector v(space);
        for (const auto& [k, c] : terms) v.add_term(k, c);
        return v;
      };
      DGLABuilder builder(space);
      for (const auto& rl : defs) {
        const auto& t = rl.toks;
        try {
          if (t[0] == "d") {
            if (t.size() < 4 || t[2] != "->")
              throw FormatError("expected: d <name> -> <combination>", rl.line);
            if (!space.find(t[1])) throw FormatError("unknown name '" + t[1] + "'", rl.line);
            builder.set_d(t[1], to_vec(detail::parse_lincomb(t, 3, resolve, rl.line)));
          } else if (t[0] == "bracket") {
            // bracket [ a , b ] -> combination
            if (t.size() < 8 || t[1] != "[" || t[3] != "," || t[5] != "]" || t[6] != "->")
              throw FormatError("expected: bracket [<a>, <b>] -> <combination>", rl.line);
            if (!space.find(t[2])) throw FormatError("unknown name '" + t[2] + "'", rl.line);
            if (!space.find(t[4])) throw FormatError("unknown name '" + t[4] + "'", rl.line);
            builder.set_bracket(t[2], t[4], to_vec(detail::parse_lincomb(t, 7, resolve, rl.line)));
          } else {
            throw FormatError("unexpected '" + t[0] + "' in dgla block", rl.line);
          }
        } catch (FormatError& e) {
          if (e.line == 0) throw FormatError(e.what(), rl.line);
          throw;
        }
      }
      DGLA built;
      try {
        built = builder.build();
      } catch (const FormatError& e) {
        throw FormatError(std::string(e.what()) + " (dgla '" + label + "')", head.line);
      }
      if (!doc.dglas.emplace(label, std::make_shared<DGLA>(std::move(built))).second)
        throw FormatError("duplicate dgla label '" + label + "'", head.line);
      doc.dgla_order.push_back(label);
    } else if (toks[0] == "morphism") {
      // morphism <label> : <src> -> <tgt>
      if (toks.size() != 6 || toks[2] != ":" || toks[4] != "->")
        throw FormatError("expected: morphism <label> : <source> -> <target>", head.line);
      std::string label = toks[1];
      auto src = doc.dglas.find(toks[3]);
      auto tgt = doc.dglas.find(toks[5]);
      if (src == doc.dglas.end())
        throw FormatError("unknown dgla '" + toks[3] + "'", head.line);
      if (tgt == doc.dglas.end())
        throw FormatError("unknown dgla '" + toks[5] + "'", head.line);
      ++i;
      auto body = block("morphism");
      GradedMap f(src->second->space, tgt->second->space, 0);
      const GradedSpace& tspace = tgt->second->space;
      auto resolve = [&tspace](const std::string& nm) { return tspace.find(nm); };
      for (const auto& rl : body) {
        const auto& t = rl.toks;
        if (t[0] != "map" || t.size() < 4 || t[2] != "->")
          throw FormatError("expected: map <name> -> <combination>", rl.line);
        auto col = f.source.find(t[1]);
        if (!col) throw FormatError("unknown name '" + t[1] + "'", rl.line);
        GradedVector v(tspace);
        for (const auto& [k, c] : detail::parse_lincomb(t, 3, resolve, rl.line)) v.add_term(k, c);
        f.set_column(*col, std::move(v));
      }
      try {
        f.validate_blocks();
      } catch (const FormatError& e) {
        throw FormatError(std::string(e.what()) + " (morphism '" + label + "')", head.line);
      }
      if (!doc.morphisms.emplace(label, DGLAMorphism{src->second, tgt->second, std::move(f)}).second)
        throw FormatError("duplicate morphism label '" + label + "'", head.line);
      doc.morphism_order.push_back(label);
    } else if (toks[0] == "artin") {
      if (toks.size() != 2) throw FormatError("expected: artin <label>", head.line);
      std::string label = toks[1];
      ++i;
      auto body = block("artin");
      ArtinAlgebra a;
      a.label = label;
      std::vector<detail::RawLine> products;
      for (const auto& rl : body) {
        if (rl.toks[0] == "monomial") {
          if (rl.toks.size() != 2) throw FormatError("expected: monomial <name>", rl.line);
          a.monomials.push_back(rl.toks[1]);
        } else if (rl.toks[0] == "product") {
          products.push_back(rl);
        } else {
          throw FormatError("unexpected '" + rl.toks[0] + "' in artin block", rl.line);
        }
      }
      int n = static_cast<int>(a.monomials.size());
      a.table.assign(n, std::vector<std::map<int, Rational>>(n));
      auto resolve = [&a](const std::string& nm) -> std::optional<int> {
        for (int k = 0; k < static_cast<int>(a.monomials.size()); ++k)
          if (a.monomials[k] == nm) return k;
        return std::nullopt;
      };
      for (const auto& rl : products) {
        const auto& t = rl.toks;
        if (t.size() < 5 || t[3] != "->")
          throw FormatError("expected: product <a> <b> -> <combination>", rl.line);
        auto x = resolve(t[1]);
        auto y = resolve(t[2]);
        if (!x) throw FormatError("unknown monomial '" + t[1] + "'", rl.line);
        if (!y) throw FormatError("unknown monomial '" + t[2] + "'", rl.line);
        auto v = detail::parse_lincomb(t, 4, resolve, rl.line);
        a.table[*x][*y] = v;
        a.table[*y][*x] = std::move(v);
      }
      try {
        finalize_artin(a);
      } catch (const ArgumentError& e) {
        throw FormatError(std::string(e.what()) + " (artin '" + label + "')", head.line);
      }
      if (!doc.artins.emplace(label, std::move(a)).second)
        throw FormatError("duplicate artin label '" + label + "'", head.line);
      doc.artin_order.push_back(label);
    } else if (toks[0] == "element") {
      if (toks.size() != 2) throw FormatError("expected: element <label>", head.line);
      std::string label = toks[1];
      ++i;
      auto body = block("element");
      ElementDecl e;
      e.label = label;
      for (const auto& rl : body) {
        const auto& t = rl.toks;
        if (t[0] != "term" || t.size() != 4)
          throw FormatError("expected: term <basis> <monomial> <rational>", rl.line);
        auto c = parse_rational(t[3]);
        if (!c) throw FormatError("bad rational '" + t[3] + "'", rl.line);
        e.terms.push_back({t[1], t[2], *c});
      }
      if (!doc.elements.emplace(label, std::move(e)).second)
        throw FormatError("duplicate element label '" + label + "'", head.line);
      doc.element_order.push_back(label);
    } else {
      throw FormatError("unexpected top-level '" + toks[0] + "'", head.line);
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string serialize_dgla(const DGLA& g, const std::string& label) {
  const GradedSpace& s = g.space;
  auto name = [&s](int i) { return s.name(i); };
  std::string out = "dgla " + label + "\n";
  for (int i = 0; i < s.dim(); ++i)
    out += "basis " + s.name(i) + " " + std::to_string(s.degree(i)) + "\n";
  for (int i = 0; i < s.dim(); ++i) {
    const GradedVector& col = g.d.column(i);
    if (col.coords.empty()) continue;
    out += "d " + s.name(i) + " -> " + detail::lincomb_str(detail::vec_terms(col), name) + "\n";
  }
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i; j < s.dim(); ++j) {
      const GradedVector& v = g.bracket_basis(i, j);
      if (v.coords.empty()) continue;
      out += "bracket [" + s.name(i) + ", " + s.name(j) + "] -> " +
             detail::lincomb_str(detail::vec_terms(v), name) + "\n";
    }
  out += "end\n";
  return out;
}

inline std::string serialize_morphism(const DGLAMorphism& f, const std::string& label,
                                      const std::string& src, const std::string& tgt) {
  const GradedSpace& ts = f.map.target;
  auto name = [&ts](int i) { return ts.name(i); };
  std::string out = "morphism " + label + " : " + src + " -> " + tgt + "\n";
  for (int i = 0; i < f.map.source.dim(); ++i) {
    const GradedVector& col = f.map.column(i);
    if (col.coords.empty()) continue;
    out += "map " + f.map.source.name(i) + " -> " +
           detail::lincomb_str(detail::vec_terms(col), name) + "\n";
  }
  out += "end\n";
  return out;
}

inline std::string serialize_artin(const ArtinAlgebra& a) {
  auto name = [&a](int i) { return a.monomials[i]; };
  std::string out = "artin " + a.label + "\n";
  for (const auto& m : a.monomials) out += "monomial " + m + "\n";
  int n = static_cast<int>(a.monomials.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (a.table[i][j].empty()) continue;
      out += "product " + a.monomials[i] + " " + a.monomials[j] + " -> " +
             detail::lincomb_str(a.table[i][j], name) + "\n";
    }
  out += "end\n";
  return out;
}

inline std::string serialize_element(const ElementDecl& e) {
  std::string out = "element " + e.label + "\n";
  for (const auto& t : e.terms)
    out += "term " + t.basis + " " + t.monomial + " " + rational_str(t.coeff) + "\n";
  out += "end\n";
  return out;
}

inline std::string serialize_document(const Document& doc) {
  std::vector<std::string> blocks;
  for (const auto& l : doc.dgla_order) blocks.push_back(serialize_dgla(*doc.dglas.at(l), l));
  for (const auto& l : doc.morphism_order) {
    const DGLAMorphism& f = doc.morphisms.at(l);
    std::string src, tgt;
    for (const auto& [dl, g] : doc.dglas) {
      if (g == f.source) src = dl;
      if (g == f.target) tgt = dl;
    }
    blocks.push_back(serialize_morphism(f, l, src, tgt));
  }
  for (const auto& l : doc.artin_order) blocks.push_back(serialize_artin(doc.artins.at(l)));
  for (const auto& l : doc.element_order) blocks.push_back(serialize_element(doc.elements.at(l)));
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n";
    out += blocks[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bracket tables as JSON
// ---------------------------------------------------------------------------

/// Structure constants of every bracket up to max_arity, canonically ordered,
/// zero entries skipped. Exact rationals are rendered as strings.
inline std::string emit_brackets_json(const LInftyStructure& s) {
  nlohmann::ordered_json root;
  root["space"] = s.space.label();
  nlohmann::ordered_json basis = nlohmann::ordered_json::array();
  for (int i = 0; i < s.space.dim(); ++i)
    basis.push_back({{"name", s.space.name(i)}, {"degree", s.space.degree(i)}});
  root["basis"] = basis;
  root["maxArity"] = s.max_arity;
  root["vanishingAbove"] = s.vanishing_above;
  nlohmann::ordered_json brackets;
  for (int n = 1; n <= s.max_arity; ++n) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& word : canonical_words(s.shifted, n)) {
      GradedVector v = s.bracket_word(word);
      if (v.coords.empty()) continue;
      nlohmann::ordered_json entry;
      nlohmann::ordered_json w = nlohmann::ordered_json::array();
      for (int k : word) w.push_back(s.shifted.name(k));
      entry["word"] = w;
      nlohmann::ordered_json val;
      for (const auto& [k, c] : v.coords) val[s.shifted.name(k)] = rational_str(c);
      entry["value"] = val;
      list.push_back(entry);
    }
    brackets[std::to_string(n)] = list;
  }
  root["brackets"] = brackets;
  return root.dump(2) + "\n";
}

inline std::string emit_brackets_text(const LInftyStructure& s) {
  std::string out = "brackets on " + s.space.label() + " up to arity " +
                    std::to_string(s.max_arity) + "\n";
  for (int n = 1; n <= s.max_arity; ++n) {
    out += "arity " + std::to_string(n) + "\n";
    bool any = false;
    for (const auto& word : canonical_words(s.shifted, n)) {
      GradedVector v = s.bracket_word(word);
      if (v.coords.empty()) continue;
      any = true;
      std::string w;
      for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) w += " . ";
        w += s.shifted.name(word[k]);
      }
      auto name = [&](int i) { return s.shifted.name(i); };
      out += "  < " + w + " > -> " + detail::lincomb_str(detail::vec_terms(v), name) + "\n";
    }
    if (!any) out += "  (all zero)\n";
  }
  return out;
}

inline LInftyStructure parse_brackets_json(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("bad json: ") + e.what());
  }
  try {
    std::vector<BasisElement> basis;
    for (const auto& b : root.at("basis"))
      basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>()});
    GradedSpace space(root.at("space").get<std::string>(), std::move(basis));
    LInftyStructure s;
    s.space = space;
    s.shifted = space.shifted(1);
    s.max_arity = root.at("maxArity").get<int>();
    s.vanishing_above = root.at("vanishingAbove").get<bool>();
    auto table = std::make_shared<std::map<std::vector<int>, GradedVector>>();
    const GradedSpace& shifted = s.shifted;
    for (const auto& [arity, list] : root.at("brackets").items()) {
      (void)arity;
      for (const auto& entry : list) {
        std::vector<int> word;
        for (const auto& nm : entry.at("word"))
          word.push_back(shifted.index_of(nm.get<std::string>()));
        GradedVector v(shifted);
        for (const auto& [nm, cs] : entry.at("value").items()) {
          auto c = parse_rational(cs.get<std::string>());
          if (!c) throw FormatError("bad rational '" + cs.get<std::string>() + "'");
          v.add_term(shifted.index_of(nm), *c);
        }
        (*table)[std::move(word)] = std::move(v);
      }
    }
    GradedSpace sh = s.shifted;
    s.generator = [table, sh](int, const std::vector<int>& word) {
      auto it = table->find(word);
      return it == table->end() ? GradedVector(sh) : it->second;
    };
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad bracket document: ") + e.what());
  }
}

}  // namespace mapcone

#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mapcone/cone.hpp"
#include "mapcone/deformation.hpp"
#include "mapcone/fixtures.hpp"
#include "mapcone/formats.hpp"
#include "mapcone/transfer.hpp"

namespace mapcone {

/// One tool invocation. Exit codes: 0 all requested checks pass, 1 a check
/// failed (witnesses printed), 2 input problem (parse error, unknown name,
/// bad degrees), 3 a capacity bound was hit.
struct JobSpec {
  std::string command;
  std::string file;
  std::string fixture;
  std::string morphism;      // label inside the document; default: the only one
  std::string artin = "eps2";
  int max_arity = 4;
  int up_to = 4;
  int bernoulli_n = 12;
  std::string format = "text";  // text | json
  std::string export_name;
  // element labels for deformation commands
  std::string x_label = "x", a_label = "a";
  std::string x1_label = "x1", a1_label = "a1";
  std::string l_label = "l", b_label = "b";
};

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Document load_document(const JobSpec& spec) {
  if (spec.file.empty()) throw FormatError("command needs an input file");
  return parse_document(read_file(spec.file));
}

inline DGLAMorphism load_chi(const JobSpec& spec, Document* doc_out = nullptr) {
  if (!spec.fixture.empty()) return fixture(spec.fixture).chi;
  Document doc = load_document(spec);
  std::string label = spec.morphism;
  if (label.empty()) {
    if (doc.morphism_order.size() != 1)
      throw FormatError("document defines " + std::to_string(doc.morphism_order.size()) +
                        " morphisms; pick one with --morphism");
    label = doc.morphism_order.front();
  }
  auto it = doc.morphisms.find(label);
  if (it == doc.morphisms.end()) throw FormatError("no morphism '" + label + "'");
  DGLAMorphism chi = it->second;
  if (doc_out) *doc_out = std::move(doc);
  return chi;
}

inline ArtinAlgebra artin_by_name(const std::string& name) {
  if (name == "eps2") return artin_monomial_quotient("eps2", {"t"}, {{2}});
  if (name == "eps3") return artin_monomial_quotient("eps3", {"t"}, {{3}});
  if (name == "eps4") return artin_monomial_quotient("eps4", {"t"}, {{4}});
  if (name == "twovars") return artin_monomial_quotient("twovars", {"s", "t"}, {{2, 0}, {0, 2}});
  throw ArgumentError("unknown coefficient ring '" + name +
                      "' (have eps2, eps3, eps4, twovars)");
}

inline GradedVector element_vector(const ElementDecl& e, const TensorDGLA& t) {
  const GradedSpace& s = t.dgla->space;
  GradedVector v(s);
  for (const auto& term : e.terms) {
    auto idx = s.find(term.basis + "@" + term.monomial);
    if (!idx)
      throw FormatError("element '" + e.label + "': no tensor basis " + term.basis + "@" +
                        term.monomial);
    v.add_term(*idx, term.coeff);
  }
  return v;
}

inline const ElementDecl& need_element(const Document& doc, const std::string& label) {
  auto it = doc.elements.find(label);
  if (it == doc.elements.end()) throw FormatError("document has no element '" + label + "'");
  return it->second;
}

inline void require_degree(const GradedVector& v, int want, const std::string& what) {
  if (v.coords.empty()) return;
  try {
    auto d = v.homogeneous_degree();
    if (d && *d != want)
      throw FormatError(what + " must have degree " + std::to_string(want) + ", found " +
                        std::to_string(*d));
  } catch (const ArgumentError&) {
    throw FormatError(what + " must be homogeneous of degree " + std::to_string(want));
  }
}

inline int report_outcome(const CheckReport& report, const std::string& pass_msg,
                          std::ostream& out) {
  if (report.ok()) {
    out << pass_msg << "\n";
    return 0;
  }
  out << report.str();
  return 1;
}

inline int cmd_check_dgla(const JobSpec& spec, std::ostream& out) {
  CheckReport all;
  if (!spec.fixture.empty()) {
    Fixture f = fixture(spec.fixture);
    all.merge(check_dgla(*f.chi.source));
    all.merge(check_dgla(*f.chi.target));
    all.merge(check_dgla_morphism(f.chi));
    return report_outcome(all, "fixture " + spec.fixture + ": all axioms hold", out);
  }
  Document doc = load_document(spec);
  for (const auto& l : doc.dgla_order) {
    CheckReport r = check_dgla(*doc.dglas.at(l));
    out << (r.ok() ? "ok dgla " + l + "\n" : "FAIL dgla " + l + "\n" + r.str());
    all.merge(r);
  }
  for (const auto& l : doc.morphism_order) {
    CheckReport r = check_dgla_morphism(doc.morphisms.at(l));
    out << (r.ok() ? "ok morphism " + l + "\n" : "FAIL morphism " + l + "\n" + r.str());
    all.merge(r);
  }
  for (const auto& l : doc.artin_order) {
    CheckReport r = check_artin(doc.artins.at(l));
    out << (r.ok() ? "ok artin " + l + "\n" : "FAIL artin " + l + "\n" + r.str());
    all.merge(r);
  }
  return all.ok() ? 0 : 1;
}

inline int cmd_cone(const JobSpec& spec, std::ostream& out) {
  DGLAMorphism chi = load_chi(spec);
  LInftyStructure s = cone_linfty(chi, spec.max_arity);
  out << (spec.format == "json" ? emit_brackets_json(s) : emit_brackets_text(s));
  return 0;
}

inline int cmd_compare_transfer(const JobSpec& spec, std::ostream& out) {
  DGLAMorphism chi = load_chi(spec);
  ConeComplex c = make_cone(chi);
  LInftyStructure direct = cone_linfty(c, spec.max_arity);
  LInftyStructure recursive = transfer_linfty(c, spec.max_arity);
  LInftyStructure trees = tree_sum_linfty(c, spec.max_arity);
  int mismatches = 0;
  for (int n = 1; n <= spec.max_arity; ++n) {
    for (const auto& word : canonical_words(c.shifted, n)) {
      GradedVector a = direct.bracket_word(word);
      GradedVector b = recursive.bracket_word(word);
      GradedVector t = trees.bracket_word(word);
      if (a == b && b == t) continue;
      ++mismatches;
      std::string w;
      for (std::size_t k = 0; k < word.size(); ++k) {
        if (k) w += " . ";
        w += c.shifted.name(word[k]);
      }
      out << "mismatch at < " << w << " >\n"
          << "  cone formula:   " << a.str() << "\n"
          << "  recursion:      " << b.str() << "\n"
          << "  tree sum:       " << t.str() << "\n";
    }
  }
  if (mismatches == 0) {
    out << "all brackets agree through arity " << spec.max_arity << "\n";
    return 0;
  }
  out << mismatches << " words disagree\n";
  return 1;
}

inline int cmd_check_linfty(const JobSpec& spec, std::ostream& out) {
  DGLAMorphism chi = load_chi(spec);
  LInftyStructure s = cone_linfty(chi, spec.up_to);
  CheckReport r = check_linfty(s, spec.up_to);
  return report_outcome(r, "square-zero identities hold through arity " +
                               std::to_string(spec.up_to), out);
}

inline int cmd_bernoulli(const JobSpec& spec, std::ostream& out) {
  int n = spec.bernoulli_n;
  if (n < 1) throw ArgumentError("--n must be positive");
  BernoulliTable table = bernoulli(n);
  out << "n  I_n  B_n  B_n/n!\n";
  for (int k = 1; k <= n; ++k) {
    Rational series = table.B[k] / Rational(factorial(k));
    out << k << "  " << rational_str(table.I[k]) << "  " << rational_str(table.B[k]) << "  "
        << rational_str(series) << "\n";
  }
  return 0;
}

inline int cmd_mc_check(const JobSpec& spec, std::ostream& out) {
  Document doc;
  DGLAMorphism chi = load_chi(spec, &doc);
  if (!spec.fixture.empty()) doc = load_document(spec);
  ArtinAlgebra artin = artin_by_name(spec.artin);
  DeformationSetup setup = make_setup(chi, artin);
  MCPair p{element_vector(need_element(doc, spec.x_label), setup.la),
           element_vector(need_element(doc, spec.a_label), setup.ma)};
  require_degree(p.x, 1, "element '" + spec.x_label + "'");
  require_degree(p.a, 0, "element '" + spec.a_label + "'");
  CheckReport pair_report = mc_pair_check(setup, p);

  // Independent route: curvature of (x, a) as one element of the shifted cone.
  int arity = std::max(2, artin.nil_index - 1);
  ConeComplex c = make_cone(chi);
  LInftyStructure s = cone_linfty(c, arity);
  GradedSpace tshifted = tensor_space(c.shifted, artin);
  GradedVector gamma = pair_to_gamma(tshifted, setup, p);
  GradedVector residue = mc_residue(s, artin, tshifted, gamma);

  bool pair_ok = pair_report.ok();
  bool cone_ok = residue.coords.empty();
  out << "pair equations: " << (pair_ok ? "hold" : "fail") << "\n";
  if (!pair_ok) out << pair_report.str();
  out << "cone curvature: " << (cone_ok ? "vanishes" : "nonzero " + residue.str()) << "\n";
  if (pair_ok != cone_ok) {
    out << "INTERNAL DISAGREEMENT between the two formulations\n";
    return 1;
  }
  return pair_ok ? 0 : 1;
}

inline int cmd_gauge_check(const JobSpec& spec, std::ostream& out) {
  Document doc;
  DGLAMorphism chi = load_chi(spec, &doc);
  if (!spec.fixture.empty()) doc = load_document(spec);
  ArtinAlgebra artin = artin_by_name(spec.artin);
  DeformationSetup setup = make_setup(chi, artin);
  MCPair p0{element_vector(need_element(doc, spec.x_label), setup.la),
            element_vector(need_element(doc, spec.a_label), setup.ma)};
  MCPair p1{element_vector(need_element(doc, spec.x1_label), setup.la),
            element_vector(need_element(doc, spec.a1_label), setup.ma)};
  GaugePair g{element_vector(need_element(doc, spec.l_label), setup.la),
              element_vector(need_element(doc, spec.b_label), setup.ma)};
  require_degree(g.l, 0, "element '" + spec.l_label + "'");
  require_degree(g.b, -1, "element '" + spec.b_label + "'");
  CheckReport r = gauge_equiv_check(setup, p0, p1, g);
  return report_outcome(r, "pairs are gauge equivalent under the supplied witness", out);
}

inline int cmd_homotopy_build(const JobSpec& spec, std::ostream& out) {
  Document doc;
  DGLAMorphism chi = load_chi(spec, &doc);
  if (!spec.fixture.empty()) doc = load_document(spec);
  ArtinAlgebra artin = artin_by_name(spec.artin);
  DeformationSetup setup = make_setup(chi, artin);
  MCPair p0{element_vector(need_element(doc, spec.x_label), setup.la),
            element_vector(need_element(doc, spec.a_label), setup.ma)};
  GaugePair g{element_vector(need_element(doc, spec.l_label), setup.la),
              element_vector(need_element(doc, spec.b_label), setup.ma)};
  require_degree(p0.x, 1, "element '" + spec.x_label + "'");
  require_degree(p0.a, 0, "element '" + spec.a_label + "'");
  require_degree(g.l, 0, "element '" + spec.l_label + "'");
  require_degree(g.b, -1, "element '" + spec.b_label + "'");

  CheckReport start = mc_pair_check(setup, p0);
  if (!start.ok()) {
    out << "starting pair is not a solution\n" << start.str();
    return 1;
  }
  MCPair p1 = gauge_pair_act(setup, g, p0);
  MCPairPath path = homotopy_from_gauge(setup, p0, g);

  auto print_poly = [&out](const char* label, const PolyElement& p) {
    out << label << ":\n";
    if (p.parts.empty()) out << "  0\n";
    for (const auto& [key, v] : p.parts) {
      out << "  ";
      if (key.first > 0) out << "s^" << key.first << " ";
      if (key.second) out << "ds ";
      out << v.str() << "\n";
    }
  };
  print_poly("path l(s)", path.lt);
  print_poly("path m(s)", path.mt);

  CheckReport r = path_check(setup, path);
  MCPair at0 = path_endpoint(setup, path, Rational(0));
  MCPair at1 = path_endpoint(setup, path, Rational(1));
  if (!(at0.x == p0.x && at0.a == p0.a)) r.add("endpoint 0", "path", "does not restrict to the starting pair");
  if (!(at1.x == p1.x && at1.a == p1.a)) r.add("endpoint 1", "path", "does not restrict to the acted pair");

  GaugePair back = extract_gauge_from_path(setup, path);
  r.merge(gauge_equiv_check(setup, p0, p1, back));
  return report_outcome(r, "path solves the deformation equation and recovers a gauge witness",
                        out);
}

inline int cmd_fixtures(const JobSpec& spec, std::ostream& out) {
  if (!spec.export_name.empty()) {
    Fixture f = fixture(spec.export_name);
    Document doc;
    doc.dgla_order = {"L", "M"};
    doc.dglas["L"] = f.chi.source;
    doc.dglas["M"] = f.chi.target;
    doc.morphism_order = {"chi"};
    doc.morphisms.emplace("chi", f.chi);
    out << serialize_document(doc);
    return 0;
  }
  for (const auto& name : fixture_names()) {
    Fixture f = fixture(name);
    out << name << " - " << f.summary << " (dim L " << f.chi.source->space.dim() << ", dim M "
        << f.chi.target->space.dim() << ")\n";
  }
  return 0;
}

}  // namespace cli_detail

inline int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.command == "check-dgla") return cli_detail::cmd_check_dgla(spec, out);
    if (spec.command == "cone") return cli_detail::cmd_cone(spec, out);
    if (spec.command == "compare-transfer") return cli_detail::cmd_compare_transfer(spec, out);
    if (spec.command == "check-linfty") return cli_detail::cmd_check_linfty(spec, out);
    if (spec.command == "bernoulli") return cli_detail::cmd_bernoulli(spec, out);
    if (spec.command == "mc-check") return cli_detail::cmd_mc_check(spec, out);
    if (spec.command == "gauge-check") return cli_detail::cmd_gauge_check(spec, out);
    if (spec.command == "homotopy-build") return cli_detail::cmd_homotopy_build(spec, out);
    if (spec.command == "fixtures") return cli_detail::cmd_fixtures(spec, out);
    err << "unknown command '" << spec.command << "'\n";
    return 2;
  } catch (const FormatError& e) {
    err << "input error";
    if (e.line > 0) err << " (line " << e.line << ")";
    err << ": " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << " (needs " << e.needed << ")\n";
    return 3;
  } catch (const ArgumentError& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mapcone

#include "catch_amalgamated.hpp"

#include "mapcone/cone.hpp"
#include "mapcone/fixtures.hpp"

using namespace mapcone;

namespace {

QRow dense(const GradedVector& v, int dim) {
  QRow r(dim, Rational(0));
  for (const auto& [i, c] : v.coords) r[i] = c;
  return r;
}

std::optional<GradedVector> try_l_coordinates(const ConeComplex& c, const GradedVector& v) {
  const GradedSpace& ls = c.l_algebra->space;
  int dim = c.m_algebra->space.dim();
  QMatrix rows;
  for (int i = 0; i < ls.dim(); ++i) rows.push_back(dense(c.chi.column(i), dim));
  auto coords = coordinates_in_span(rows, dense(v, dim));
  if (!coords) return std::nullopt;
  GradedVector out(ls);
  for (std::size_t k = 0; k < coords->size(); ++k)
    out.add_term(static_cast<int>(k), (*coords)[k]);
  return out;
}

GradedVector bv(const DGLAPtr& g, const std::string& name) {
  return basis_vector(g->space, g->space.index_of(name));
}

}  // namespace

TEST_CASE("named fixtures are well-formed inclusions") {
  // name -> (dim L, dim M)
  std::vector<std::tuple<std::string, int, int>> expected = {
      {"abelian", 2, 2},   {"borel", 2, 3},       {"dualnumbers", 1, 3},
      {"endo", 3, 4},      {"derived", 2, 4},     {"hochschild", 25, 28},
      {"split", 25, 28},
  };
  REQUIRE(fixture_names().size() == expected.size());
  for (const auto& [name, diml, dimm] : expected) {
    INFO(name);
    Fixture f = fixture(name);
    CHECK(f.name == name);
    CHECK(f.chi.source->space.dim() == diml);
    CHECK(f.chi.target->space.dim() == dimm);
    CHECK(check_dgla(*f.chi.source).ok());
    CHECK(check_dgla(*f.chi.target).ok());
    CHECK(check_dgla_morphism(f.chi).ok());
  }
  std::vector<std::string> desk = desk_fixture_names();
  for (const auto& [name, diml, dimm] : expected) {
    bool listed = std::find(desk.begin(), desk.end(), name) != desk.end();
    CHECK(fixture(name).desk == listed);
  }
  CHECK_THROWS_AS(fixture("nope"), ArgumentError);
}

TEST_CASE("subalgebra restriction rejects escapes") {
  DGLAPtr sl2 = fixture("borel").chi.target;
  // [e, f] = h escapes the span of {e, f}
  CHECK_THROWS_AS(sub_dgla_inclusion(sl2, "bad", {"e", "f"}), FormatError);
  CHECK_NOTHROW(sub_dgla_inclusion(sl2, "line", {"e"}));
}

TEST_CASE("derived inclusion spans the image of the differential") {
  Fixture f = fixture("derived");
  const GradedSpace& ls = f.chi.source->space;
  REQUIRE(ls.dim() == 2);
  CHECK(ls.degree(ls.index_of("s")) == 0);
  CHECK(ls.degree(ls.index_of("n")) == 0);
  // the sub-bracket restricts [s, n] = n
  CHECK(f.chi.source->bracket(bv(f.chi.source, "s"), bv(f.chi.source, "n")) ==
        bv(f.chi.source, "n"));
  // chi lands on the image of d of the big algebra
  const DGLAPtr& m = f.chi.target;
  CHECK(f.chi.map.column(ls.index_of("s")) == m->d.apply(bv(m, "st")));
  CHECK(f.chi.map.column(ls.index_of("n")) == m->d.apply(bv(m, "nt")));
}

TEST_CASE("associative table checker accepts stock algebras and rejects broken ones") {
  CHECK_NOTHROW(check_assoc(dual_numbers_algebra()));
  CHECK_NOTHROW(check_assoc(split_quotient_algebra()));

  AssocAlgebra bad_unit = dual_numbers_algebra();
  bad_unit.unit = {{1, Rational(1)}};  // the nilpotent cannot act as a unit
  CHECK_THROWS_WITH(check_assoc(bad_unit), Catch::Matchers::ContainsSubstring("unit law"));

  // u is a two-sided unit, but (a*a)*b = 0 while a*(a*b) = a
  AssocAlgebra bad_assoc;
  bad_assoc.label = "skew";
  bad_assoc.names = {"u", "a", "b"};
  bad_assoc.unit = {{0, Rational(1)}};
  bad_assoc.table = {
      {{{0, Rational(1)}}, {{1, Rational(1)}}, {{2, Rational(1)}}},
      {{{1, Rational(1)}}, {{2, Rational(1)}}, {{0, Rational(1)}}},
      {{{2, Rational(1)}}, {}, {}},
  };
  CHECK_THROWS_WITH(check_assoc(bad_assoc),
                    Catch::Matchers::ContainsSubstring("associativity"));
}

TEST_CASE("cochain complex of the dual numbers has the expected differential and brackets") {
  DGLAPtr h = hochschild_dgla(dual_numbers_algebra(), 3);
  const GradedSpace& s = h->space;
  CHECK(s.dim() == 28);
  CHECK(s.degree(s.index_of("c1_e_u")) == 0);
  CHECK(s.degree(s.index_of("c2_ee_e")) == 1);
  CHECK(s.degree(s.index_of("c3_eue_e")) == 2);
  CHECK(check_dgla(*h).ok());

  GradedVector g = bv(h, "c1_e_u");
  GradedVector dg = h->d.apply(g);
  CHECK(dg == Rational(2) * bv(h, "c2_ee_e"));

  // the self-bracket of the degree-0 cochain with its differential evaluates
  // to twice the cochain reading off the unit component on the nilpotent pair
  CHECK(h->bracket(g, dg) == Rational(2) * bv(h, "c2_ee_u"));

  // conjugation by the idempotent-reading cochain scales the square cochain
  GradedVector hd = bv(h, "c1_e_e");
  GradedVector D = bv(h, "c2_ee_e");
  CHECK(h->d.apply(hd).is_zero());
  CHECK(h->bracket(hd, D) == Rational(-1) * D);
  CHECK(h->bracket(hd, h->bracket(hd, D)) == D);

  // insertion signs: the two slots of a square cochain composed with itself
  // cancel, while an asymmetric word keeps a single survivor
  CHECK(h->bracket(D, D).is_zero());
  CHECK(h->bracket(bv(h, "c2_eu_e"), D) == bv(h, "c3_eue_e"));

  for (int i = 0; i < s.dim(); ++i)
    CHECK(h->d.apply(h->d.apply(basis_vector(s, i))).is_zero());

  CHECK_THROWS_AS(hochschild_dgla(dual_numbers_algebra(), 1), ArgumentError);
}

TEST_CASE("desk slice of the dual numbers matches the full cochain algebra") {
  DGLAPtr full = hochschild_dgla(dual_numbers_algebra(), 3);
  DGLAPtr slice = fixture("dualnumbers").chi.target;
  const GradedSpace& ss = slice->space;
  std::map<std::string, std::string> into = {
      {"g", "c1_e_u"}, {"D", "c2_ee_e"}, {"P", "c2_ee_u"}};
  auto emb = [&](const GradedVector& v) {
    GradedVector out(full->space);
    for (const auto& [i, c] : v.coords)
      out.add_term(full->space.index_of(into.at(ss.name(i))), c);
    return out;
  };
  for (const auto& [nm, target] : into) {
    GradedVector x = bv(slice, nm);
    CHECK(ss.degree(ss.index_of(nm)) == full->space.degree(full->space.index_of(target)));
    CHECK(emb(slice->d.apply(x)) == full->d.apply(emb(x)));
    for (const auto& [nm2, target2] : into) {
      GradedVector y = bv(slice, nm2);
      CHECK(emb(slice->bracket(x, y)) == full->bracket(emb(x), emb(y)));
    }
  }
}

TEST_CASE("kernel inclusion pairs the closed generator with the cokernel line") {
  HochschildCone hc = hochschild_cone_setup(dual_numbers_algebra(), 3, 1);
  CHECK(hc.coker_names == std::vector<std::string>{"c1_e_u", "c2_ee_u", "c3_eee_u"});
  const GradedSpace& ls = hc.chi.source->space;
  CHECK(ls.dim() == 25);
  for (const auto& nm : hc.coker_names) CHECK_FALSE(ls.find(nm).has_value());

  ConeComplex c = make_cone(hc.chi);
  DGLAPtr m = hc.chi.target;
  GradedVector g = bv(m, "c1_e_u");
  GradedVector dg = m->d.apply(g);
  auto lco = try_l_coordinates(c, dg);
  REQUIRE(lco.has_value());
  GradedVector gamma = cone_embed(c, *lco, g);
  CHECK(c.delta.apply(gamma).is_zero());

  // two-bracket of the closed generator with itself: the projection to the
  // cokernel line is -2 times the square cochain. The sign tracks the unary
  // bracket being minus the cone differential; the magnitude is the pairing
  // of the degree-0 cochain against its own differential computed above.
  LInftyStructure s2 = cone_linfty(c, 2);
  GradedVector gs = reinterpret_in(gamma, c.shifted);
  GradedVector sq = s2.apply({gs, gs});
  CHECK(sq == Rational(-2) * basis_vector(c.shifted, c.shifted.index_of("m.c2_ee_u")));

  SECTION("slice fixture reproduces the same square") {
    ConeComplex cs = make_cone(fixture("dualnumbers").chi);
    DGLAPtr sm = fixture("dualnumbers").chi.target;
    GradedVector sg = bv(sm, "g");
    auto slco = try_l_coordinates(cs, sm->d.apply(sg));
    REQUIRE(slco.has_value());
    GradedVector sgamma = reinterpret_in(cone_embed(cs, *slco, sg), cs.shifted);
    LInftyStructure ss2 = cone_linfty(cs, 2);
    CHECK(ss2.apply({sgamma, sgamma}) ==
          Rational(-2) * basis_vector(cs.shifted, cs.shifted.index_of("m.P")));
  }

  SECTION("construction guards") {
    AssocAlgebra tiny;
    tiny.label = "k";
    tiny.names = {"u"};
    tiny.unit = {{0, Rational(1)}};
    tiny.table = {{{{0, Rational(1)}}}};
    CHECK_NOTHROW(check_assoc(tiny));
    CHECK_THROWS_AS(hochschild_cone_setup(tiny, 3, 0), ArgumentError);
  }
}

TEST_CASE("split quotient yields trivial induced brackets") {
  HochschildCone sc = hochschild_cone_setup(split_quotient_algebra(), 3, 1);
  CHECK(sc.coker_names == std::vector<std::string>{"c1_q_p", "c2_qq_p", "c3_qqq_p"});
  ConeComplex c = make_cone(sc.chi);
  DGLAPtr m = sc.chi.target;

  // the arity-1 cokernel class is not a cocycle: its differential keeps a
  // component on the cokernel line, so no closed lift exists
  CHECK_FALSE(try_l_coordinates(c, m->d.apply(bv(m, "c1_q_p"))).has_value());

  // arities 2 and 3 lift through the splitting to delta-closed cone elements
  GradedVector c2v = bv(m, "c2_qq_p");
  auto l2 = try_l_coordinates(c, m->d.apply(c2v));
  REQUIRE(l2.has_value());
  GradedVector g2 = cone_embed(c, *l2, c2v);
  CHECK(c.delta.apply(g2).is_zero());

  GradedVector c3v = bv(m, "c3_qqq_p");
  CHECK(m->d.apply(c3v).is_zero());
  GradedVector g3 = cone_embed(c, GradedVector(sc.chi.source->space), c3v);
  CHECK(c.delta.apply(g3).is_zero());

  // every bracket of the splitting representatives vanishes
  LInftyStructure s = cone_linfty(c, 4);
  GradedVector a = reinterpret_in(g2, c.shifted);
  GradedVector b = reinterpret_in(g3, c.shifted);
  CHECK(s.apply({a}).is_zero());
  CHECK(s.apply({b}).is_zero());
  CHECK(s.apply({a, b}).is_zero());
  CHECK(s.apply({a, a}).is_zero());
  CHECK(s.apply({b, b}).is_zero());
  CHECK(s.apply({a, b, b}).is_zero());
  CHECK(s.apply({b, b, b}).is_zero());
  CHECK(s.apply({a, b, b, b}).is_zero());
  CHECK(s.apply({b, b, b, b}).is_zero());
}

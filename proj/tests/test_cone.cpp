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

// coordinates in L of a vector lying in the image of chi
GradedVector l_coordinates(const ConeComplex& c, const GradedVector& v) {
  const GradedSpace& ls = c.l_algebra->space;
  int dim = c.m_algebra->space.dim();
  QMatrix rows;
  for (int i = 0; i < ls.dim(); ++i) rows.push_back(dense(c.chi.column(i), dim));
  auto coords = coordinates_in_span(rows, dense(v, dim));
  REQUIRE(coords.has_value());
  GradedVector out(ls);
  for (std::size_t k = 0; k < coords->size(); ++k) out.add_term(static_cast<int>(k), (*coords)[k]);
  return out;
}

// m -> (dm, m), the embedding of M into the shifted cone over chi: im d -> M
GradedVector embed_m(const ConeComplex& c, const GradedVector& m) {
  GradedVector dm = c.m_algebra->d.apply(m);
  return reinterpret_in(cone_embed(c, l_coordinates(c, dm), m), c.shifted);
}

GradedVector shifted_basis(const LInftyStructure& s, const std::string& name) {
  return basis_vector(s.shifted, s.shifted.index_of(name));
}

}  // namespace

TEST_CASE("Bernoulli recursion agrees with the classical recurrence") {
  BernoulliTable t = bernoulli(12);
  std::vector<Rational> classical(13);
  classical[0] = 1;
  for (int n = 1; n <= 12; ++n) {
    Rational acc = 0;
    for (int j = 0; j < n; ++j) acc += Rational(binomial(n + 1, j)) * classical[j];
    classical[n] = -acc / Rational(binomial(n + 1, n));
  }
  for (int n = 0; n <= 12; ++n) CHECK(t.B[n] == classical[n]);

  CHECK(t.B[1] == Rational(-1, 2));
  CHECK(t.B[2] == Rational(1, 6));
  CHECK(t.B[3] == 0);
  CHECK(t.B[4] == Rational(-1, 30));
  CHECK(t.B[12] == Rational(-691, 2730));
  for (int n = 3; n <= 11; n += 2) CHECK(t.B[n] == 0);
}

TEST_CASE("phi polynomials and their integrals") {
  BernoulliTable t = bernoulli(6);
  // phi_1 = t, phi_2 = (t^2 - t)/2
  CHECK(t.phi[1] == std::vector<Rational>{0, 1});
  CHECK(t.phi[2] == std::vector<Rational>{0, Rational(-1, 2), Rational(1, 2)});
  for (int n = 1; n <= 6; ++n) {
    CHECK(t.I[n] == -t.B[n] / Rational(factorial(n)));
    // phi_n(0) = 0
    CHECK(eval_poly(t.phi[n], 0) == 0);
  }
  // recursion phi_{n+1} = int_0^t phi_n - t I_n checked pointwise
  for (int n = 1; n <= 5; ++n) {
    for (const Rational& x : {Rational(1), Rational(1, 2), Rational(-1, 3)}) {
      // antiderivative of phi_n at x
      Rational anti = 0;
      for (std::size_t i = 0; i < t.phi[n].size(); ++i) {
        Rational pw = 1;
        for (std::size_t k = 0; k <= i; ++k) pw *= x;
        anti += t.phi[n][i] / Rational(i + 1) * pw;
      }
      CHECK(eval_poly(t.phi[n + 1], x) == anti - x * t.I[n]);
    }
  }
  CHECK(eval_poly(t.phi[2], Rational(1, 2)) == Rational(-1, 8));
  CHECK_THROWS_AS(bernoulli(-1), ArgumentError);
}

TEST_CASE("series coefficients B_n/n! of x/(e^x - 1) - 1 + x/2") {
  BernoulliTable t = bernoulli(8);
  CHECK(t.B[2] / Rational(factorial(2)) == Rational(1, 12));
  CHECK(t.B[4] / Rational(factorial(4)) == Rational(-1, 720));
  CHECK(t.B[6] / Rational(factorial(6)) == Rational(1, 30240));
  CHECK(t.B[8] / Rational(factorial(8)) == Rational(-1, 1209600));
  // the same numbers as -I_n
  for (int n = 2; n <= 8; n += 2) CHECK(t.B[n] / Rational(factorial(n)) == -t.I[n]);
}

TEST_CASE("cone complex layout and differential") {
  Fixture f = fixture("borel");
  ConeComplex c = make_cone(f.chi);
  CHECK(c.cone_space.label() == "cone(borel->sl2)");
  // l.x keeps its degree, m.y sits one higher
  CHECK(c.cone_space.degree(c.cone_space.index_of("l.e")) == 0);
  CHECK(c.cone_space.degree(c.cone_space.index_of("m.e")) == 1);
  CHECK(c.shifted.degree(c.shifted.index_of("l.e")) == -1);

  // delta(l, m) = (dl, chi(l) - dm); here d = 0 so delta(l.e) = m.e
  GradedVector de = c.delta.apply(basis_vector(c.cone_space, "l.e"));
  CHECK(de.coord(c.cone_space.index_of("m.e")) == 1);
  CHECK(de.coords.size() == 1);
  CHECK(c.delta.apply(basis_vector(c.cone_space, "m.h")).is_zero());

  // delta squares to zero on every fixture
  for (const auto& name : fixture_names()) {
    ConeComplex cc = make_cone(fixture(name).chi);
    for (int i = 0; i < cc.cone_space.dim(); ++i)
      CHECK(cc.delta.apply(cc.delta.column(i)).is_zero());
  }
}

TEST_CASE("cone embedding and projections round-trip") {
  ConeComplex c = make_cone(fixture("borel").chi);
  GradedVector l = Rational(2) * basis_vector(c.l_algebra->space, "e");
  GradedVector m = basis_vector(c.m_algebra->space, "f") - basis_vector(c.m_algebra->space, "h");
  GradedVector x = cone_embed(c, l, m);
  CHECK(cone_l_part(c, x) == l);
  CHECK(cone_m_part(c, x) == m);
}

TEST_CASE("unary bracket is minus the cone differential") {
  for (const auto& name : desk_fixture_names()) {
    ConeComplex c = make_cone(fixture(name).chi);
    LInftyStructure s = cone_linfty(c, 2);
    for (int i = 0; i < c.shifted.dim(); ++i) {
      GradedVector lhs = s.bracket_word({i});
      GradedVector rhs = reinterpret_in(
          c.delta.apply(basis_vector(c.cone_space, c.shifted.name(i))), c.shifted);
      rhs *= Rational(-1);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("frozen bracket values on the borel pair") {
  LInftyStructure s = cone_linfty(make_cone(fixture("borel").chi), 5);
  // <l.e> = -m.e, and M-side generators are cycles here
  CHECK(s.apply({shifted_basis(s, "l.e")}) == Rational(-1) * shifted_basis(s, "m.e"));
  CHECK(s.apply({shifted_basis(s, "m.h")}).is_zero());
  // <l.e . l.h> = (-1)^0 [e,h] = -2 l.e
  CHECK(s.apply({shifted_basis(s, "l.e"), shifted_basis(s, "l.h")}) ==
        Rational(-2) * shifted_basis(s, "l.e"));
  // <l.h . m.e> = -(1/2)[e, h] = m.e
  CHECK(s.apply({shifted_basis(s, "l.h"), shifted_basis(s, "m.e")}) == shifted_basis(s, "m.e"));
  // <l.h . m.e . m.f> carries B_2: -(1/12)([e,[f,h]] + [f,[e,h]]) = -(1/3) m.h
  CHECK(s.apply({shifted_basis(s, "l.h"), shifted_basis(s, "m.e"), shifted_basis(s, "m.f")}) ==
        Rational(-1, 3) * shifted_basis(s, "m.h"));
  // M-only words vanish at every arity >= 2
  CHECK(s.apply({shifted_basis(s, "m.e"), shifted_basis(s, "m.f")}).is_zero());
  CHECK(s.apply({shifted_basis(s, "m.e"), shifted_basis(s, "m.f"), shifted_basis(s, "m.h")})
            .is_zero());
  // two or more L factors kill arities >= 3
  CHECK(s.apply({shifted_basis(s, "l.e"), shifted_basis(s, "l.h"), shifted_basis(s, "m.f")})
            .is_zero());

  SECTION("B_3 = 0 empties arity 4 entirely") {
    for (const auto& word : canonical_words(s.shifted, 4))
      CHECK(s.bracket_word(word).is_zero());
  }
  SECTION("B_4 revives arity 5") {
    GradedVector v = s.apply({shifted_basis(s, "l.e"), shifted_basis(s, "m.h"),
                              shifted_basis(s, "m.h"), shifted_basis(s, "m.h"),
                              shifted_basis(s, "m.h")});
    // -(B_4/4!) * 4! * ad_h^4(e) = (1/30) * 16 e
    CHECK(v == Rational(8, 15) * shifted_basis(s, "m.e"));
  }
}

TEST_CASE("frozen bracket values on the dual-numbers slice") {
  LInftyStructure s = cone_linfty(make_cone(fixture("dualnumbers").chi), 4);
  CHECK(s.apply({shifted_basis(s, "m.g")}) == Rational(2) * shifted_basis(s, "m.D"));
  CHECK(s.apply({shifted_basis(s, "l.D")}) == Rational(-1) * shifted_basis(s, "m.D"));
  CHECK(s.apply({shifted_basis(s, "l.D"), shifted_basis(s, "m.g")}) ==
        Rational(-1, 2) * shifted_basis(s, "m.P"));
  // [g, P] = 0 kills every arity-3 word
  for (const auto& word : canonical_words(s.shifted, 3))
    CHECK(s.bracket_word(word).is_zero());
}

TEST_CASE("frozen bracket values on the endomorphism pair") {
  LInftyStructure s = cone_linfty(make_cone(fixture("endo").chi), 4);
  // odd m flips the coefficient sign: <m.Em . l.Ep> = +(1/2)[Em, Ep]
  GradedVector v = s.apply({shifted_basis(s, "m.Em"), shifted_basis(s, "l.Ep")});
  CHECK(v == Rational(1, 2) * shifted_basis(s, "m.E00") +
                 Rational(1, 2) * shifted_basis(s, "m.E11"));
  // mixed-parity pair needs the Koszul sign inside the ordered sum
  GradedVector w = s.apply({shifted_basis(s, "l.E00"), shifted_basis(s, "m.Em"),
                            shifted_basis(s, "m.Ep")});
  CHECK(w == Rational(-1, 6) * shifted_basis(s, "m.E00") +
                 Rational(-1, 6) * shifted_basis(s, "m.E11"));
}

TEST_CASE("square-zero holds on every desk fixture") {
  for (const auto& name : desk_fixture_names()) {
    LInftyStructure s = cone_linfty(make_cone(fixture(name).chi), 4);
    CheckReport rep = check_linfty(s, 4);
    INFO(name << ": " << rep.str());
    CHECK(rep.ok());
  }
}

TEST_CASE("single-site mutations break the square-zero identities") {
  DGLAMorphism borel = fixture("borel").chi;
  DGLAMorphism endo = fixture("endo").chi;
  auto broken = [](const DGLAMorphism& chi, ConeOptions opts) {
    return !check_linfty(cone_linfty(chi, 4, opts), 4).ok();
  };
  ConeOptions o;
  o.mutation = ConeMutation::ll_sign;
  CHECK(broken(borel, o));
  o.mutation = ConeMutation::ml_half;
  CHECK(broken(borel, o));
  o.mutation = ConeMutation::chi_sign;
  CHECK(broken(borel, o));
  // dm_sign needs d to act on the image of chi; abelian has d(chi x) = y
  o.mutation = ConeMutation::dm_sign;
  CHECK(broken(fixture("abelian").chi, o));
  o.mutation = ConeMutation::dl_sign;
  CHECK(broken(endo, o));
  o.mutation = ConeMutation::higher_sign;
  CHECK(broken(borel, o));
  o.mutation = ConeMutation::drop_koszul;
  CHECK(broken(endo, o));
  ConeOptions ob;
  ob.bernoulli_override[2] = Rational(1, 5);
  CHECK(broken(borel, ob));
}

TEST_CASE("embedding m -> (dm, m) relates cone brackets to derived brackets") {
  for (const auto& label : {std::string("derived"), std::string("endo")}) {
    DGLAPtr big = fixture(label).chi.target;
    DGLAMorphism chi = derived_bracket_fixture(big);
    ConeComplex c = make_cone(chi);
    LInftyStructure s = cone_linfty(c, 5);
    DerivedBrackets phi = derived_brackets(big);
    BernoulliTable bt = bernoulli(4);
    const GradedSpace& ms = big->space;

    // arity 1 vanishes on the embedded image
    for (int i = 0; i < ms.dim(); ++i)
      CHECK(s.apply({embed_m(c, basis_vector(ms, i))}).is_zero());

    // arity 2: <(dm1,m1).(dm2,m2)> = (d Phi_2, Phi_2)
    for (int i = 0; i < ms.dim(); ++i)
      for (int j = i; j < ms.dim(); ++j) {
        GradedVector m1 = basis_vector(ms, i), m2 = basis_vector(ms, j);
        GradedVector lhs = s.apply({embed_m(c, m1), embed_m(c, m2)});
        CHECK(lhs == embed_m(c, phi.value({m1, m2})));
      }

    // arity n+1 for n = 2, 3, 4: (0, (-1)^{n+1} B_n (n+1) Phi_{n+1}).
    // The sign tracks the unary bracket being minus the cone differential:
    // rewriting the right-nested generator sum into the left-nested Phi form
    // costs (-1)^n against the -(B_n/n!) front factor.
    for (int n = 2; n <= 4; ++n) {
      Rational factor = bt.B[n] * Rational(n + 1);
      if (n % 2 == 0) factor = -factor;
      std::vector<int> idx(n + 1, 0);
      while (true) {
        std::vector<GradedVector> args, margs;
        for (int k = 0; k <= n; ++k) {
          margs.push_back(basis_vector(ms, idx[k]));
          args.push_back(embed_m(c, margs.back()));
        }
        GradedVector lhs = s.apply(args);
        GradedVector rhs = reinterpret_in(
            cone_embed(c, GradedVector(c.l_algebra->space), factor * phi.value(margs)),
            c.shifted);
        CHECK(lhs == rhs);
        int p = n;
        while (p >= 0 && idx[p] == ms.dim() - 1) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q <= n; ++q) idx[q] = idx[p];
      }
    }
  }
}

TEST_CASE("derived bracket families: symmetry and the cyclic identity") {
  for (const auto& label : {std::string("derived"), std::string("endo")}) {
    DGLAPtr big = fixture(label).chi.target;
    const GradedSpace& ms = big->space;
    DerivedBrackets even = derived_brackets(big);
    DerivedBrackets odd = derived_brackets(big, true);

    for (int i = 0; i < ms.dim(); ++i) {
      // Phi_1 = { }_1 = 0
      CHECK(even.value({basis_vector(ms, i)}).is_zero());
      CHECK(odd.value({basis_vector(ms, i)}).is_zero());
      for (int j = 0; j < ms.dim(); ++j) {
        GradedVector a = basis_vector(ms, i), b = basis_vector(ms, j);
        Rational sgn = (ms.degree(i) * ms.degree(j)) % 2 == 0 ? Rational(1) : Rational(-1);
        CHECK(even.value({a, b}) == sgn * even.value({b, a}));
        CHECK(odd.value({a, b}) == Rational(-1) * sgn * odd.value({b, a}));
      }
    }

    // {{m1,m2},m3} + cyclic with Koszul prefactors = (3/2) d {m1,m2,m3}
    for (int i = 0; i < ms.dim(); ++i)
      for (int j = 0; j < ms.dim(); ++j)
        for (int k = 0; k < ms.dim(); ++k) {
          GradedVector m1 = basis_vector(ms, i), m2 = basis_vector(ms, j),
                       m3 = basis_vector(ms, k);
          int i1 = ms.degree(i), i2 = ms.degree(j), i3 = ms.degree(k);
          auto pm = [](int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); };
          GradedVector lhs = odd.value({odd.value({m1, m2}), m3});
          lhs += pm(i1 * i2 + i1 * i3) * odd.value({odd.value({m2, m3}), m1});
          lhs += pm(i2 * i3 + i1 * i3) * odd.value({odd.value({m3, m1}), m2});
          GradedVector rhs = Rational(3, 2) * big->d.apply(odd.value({m1, m2, m3}));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("a commuting square induces a strict morphism of cones") {
  DGLAMorphism chi = fixture("borel").chi;  // borel -> sl2
  // chi_prime: span{e} -> borel; the square over (top = chi_prime, bottom = chi)
  DGLAMorphism chi_prime = sub_dgla_inclusion(chi.source, "eline", {"e"});
  LInftyStructure src = cone_linfty(make_cone(chi_prime), 3);
  LInftyStructure tgt = cone_linfty(make_cone(chi), 3);
  ConeSquare sq{chi_prime, chi};
  LInftyLinearMorphism f = cone_functor_map(src, tgt, sq);
  CHECK(f.f1.apply(basis_vector(src.space, "l.e")).coord(tgt.space.index_of("l.e")) == 1);
  CHECK(f.f1.apply(basis_vector(src.space, "m.h")).coord(tgt.space.index_of("m.h")) == 1);
  CHECK(check_linear_morphism(f, 3).ok());
}

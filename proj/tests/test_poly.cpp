#include "catch_amalgamated.hpp"

#include "mapcone/polydgla.hpp"

using namespace mapcone;

namespace {

// x -> y in degrees 0, 1 with [x,y] = y: smallest DGLA with d and bracket
DGLAPtr two_term() {
  GradedSpace s("S", {{"x", 0}, {"y", 1}});
  DGLABuilder b(s);
  b.set_d("x", basis_vector(s, "y"));
  b.set_bracket("x", "y", basis_vector(s, "y"));
  return std::make_shared<const DGLA>(b.build());
}

int total_degree(const PolyElement& p) {
  std::optional<int> deg;
  for (const auto& [k, v] : p.parts) {
    auto d = v.homogeneous_degree();
    REQUIRE(d.has_value());
    int full = *d + k.second;
    if (!deg)
      deg = full;
    else
      REQUIRE(*deg == full);
  }
  REQUIRE(deg.has_value());
  return *deg;
}

}  // namespace

TEST_CASE("poly_d squares to zero") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  PolyElement p(g, 6);
  p.add_term(3, 0, Rational(2) * basis_vector(s, "x"));
  p.add_term(1, 0, basis_vector(s, "y"));
  p.add_term(2, 1, basis_vector(s, "x"));
  CHECK(poly_d(poly_d(p)).is_zero());
}

TEST_CASE("poly_d matches hand values") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  int y = s.index_of("y");
  // d(t^2 x) = 2 t dt x + t^2 y
  PolyElement p = poly_term(g, 4, 2, 0, basis_vector(s, "x"));
  PolyElement dp = poly_d(p);
  CHECK(dp.part(1, 1).coord(s.index_of("x")) == 2);
  CHECK(dp.part(2, 0).coord(y) == 1);
  // d(t dt y) = -t dt (d y) = 0
  CHECK(poly_d(poly_term(g, 4, 1, 1, basis_vector(s, "y"))).is_zero());
  // d(dt x) = -dt y
  PolyElement q = poly_d(poly_term(g, 4, 0, 1, basis_vector(s, "x")));
  CHECK(q.part(0, 1).coord(y) == -1);
}

TEST_CASE("poly_bracket is graded antisymmetric and satisfies Leibniz") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  std::vector<PolyElement> elts;
  elts.push_back(poly_term(g, 8, 1, 0, basis_vector(s, "x")));
  elts.push_back(poly_term(g, 8, 0, 1, basis_vector(s, "x")));
  elts.push_back(poly_term(g, 8, 2, 0, basis_vector(s, "y")));
  elts.push_back(poly_term(g, 8, 1, 1, basis_vector(s, "y")));
  for (const PolyElement& p : elts)
    for (const PolyElement& q : elts) {
      int dp = total_degree(p), dq = total_degree(q);
      // [p,q] + (-1)^{dp dq} [q,p] = 0
      Rational flip = (dp * dq) % 2 == 0 ? Rational(1) : Rational(-1);
      PolyElement sum = poly_bracket(p, q) + flip * poly_bracket(q, p);
      CHECK(sum.is_zero());

      // d[p,q] = [dp,q] + (-1)^{dp} [p,dq]
      Rational sgn = dp % 2 == 0 ? Rational(1) : Rational(-1);
      PolyElement diff = poly_d(poly_bracket(p, q)) - poly_bracket(poly_d(p), q) -
                         sgn * poly_bracket(p, poly_d(q));
      CHECK(diff.is_zero());
    }
}

TEST_CASE("evaluation is a DGLA morphism killing dt") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  PolyElement p(g, 6);
  p.add_term(0, 0, basis_vector(s, "x"));
  p.add_term(2, 0, Rational(-3) * basis_vector(s, "x"));
  p.add_term(1, 1, basis_vector(s, "y"));
  PolyElement q(g, 6);
  q.add_term(1, 0, basis_vector(s, "y"));
  q.add_term(0, 1, basis_vector(s, "x"));

  for (const Rational& a : {Rational(0), Rational(1), Rational(1, 2), Rational(-2)}) {
    CHECK(evaluate_at(poly_bracket(p, q), a) == g->bracket(evaluate_at(p, a), evaluate_at(q, a)));
    CHECK(evaluate_at(poly_d(p), a) == g->diff(evaluate_at(p, a)));
  }
  // t = 1/2 on p: x - 3/4 x, dt part dropped
  GradedVector v = evaluate_at(p, Rational(1, 2));
  CHECK(v.coord(s.index_of("x")) == Rational(1, 4));
  CHECK(v.coord(s.index_of("y")) == 0);
}

TEST_CASE("integration rules") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  int x = s.index_of("x");
  // int_0^1 t^i dt x = x/(i+1)
  for (int i = 0; i <= 4; ++i) {
    GradedVector v = integrate(poly_term(g, 6, i, 1, basis_vector(s, "x")), 0, 1);
    CHECK(v.coord(x) == Rational(1, i + 1));
  }
  // polynomial terms do not contribute
  CHECK(integrate(poly_term(g, 6, 3, 0, basis_vector(s, "x")), 0, 1).is_zero());

  SECTION("Stokes on polynomial parts") {
    PolyElement p(g, 6);
    p.add_term(0, 0, Rational(5) * basis_vector(s, "x"));
    p.add_term(2, 0, Rational(-1, 2) * basis_vector(s, "x"));
    p.add_term(3, 0, basis_vector(s, "y"));
    GradedVector lhs = integrate(poly_d(p), 0, 1);
    // the d_M summand of poly_d sits at dt = 0 and is invisible to integrate
    GradedVector rhs = evaluate_at(p, 1) - evaluate_at(p, 0);
    CHECK(lhs == rhs);
  }

  SECTION("fundamental theorem for the primitive") {
    PolyElement p(g, 6);
    p.add_term(1, 1, Rational(3) * basis_vector(s, "x"));
    p.add_term(0, 1, basis_vector(s, "y"));
    PolyElement prim = integrate_from_zero(p);
    CHECK(evaluate_at(prim, 0).is_zero());
    PolyElement dprim = poly_d(prim);
    // dt component of d(primitive) recovers the dt part of p
    for (const auto& [k, v] : p.parts)
      if (k.second == 1) CHECK(dprim.part(k.first, 1) == v);
    // and the value at t = b equals int_0^b p
    for (const Rational& b : {Rational(1), Rational(1, 3)})
      CHECK(evaluate_at(prim, b) == integrate(p, 0, b));
  }
}

TEST_CASE("poly_mul shifts t powers") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  PolyElement p = poly_term(g, 6, 1, 0, basis_vector(s, "x"));
  PolyElement out = poly_mul({{1, Rational(1)}, {0, Rational(2)}}, p);
  CHECK(out.part(2, 0).coord(s.index_of("x")) == 1);
  CHECK(out.part(1, 0).coord(s.index_of("x")) == 2);
}

TEST_CASE("cap violations raise CapacityError with the needed degree") {
  DGLAPtr g = two_term();
  const GradedSpace& s = g->space;
  PolyElement p(g, 2);
  try {
    p.add_term(5, 0, basis_vector(s, "x"));
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(e.needed == 5);
  }
}

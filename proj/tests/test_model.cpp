#include <catch_amalgamated.hpp>

#include "sullivan/library.hpp"
#include "sullivan/model.hpp"

using namespace sullivan;

namespace {

GradedPolynomial gen(std::size_t n, std::size_t i) { return GradedPolynomial::generator(n, i); }

std::vector<Violation> violations_of(const SullivanModel& m) {
  try {
    validate(m);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST_CASE("valid models pass validation") {
  GradedAlgebra A({{"x", 2}, {"y", 3}});
  SullivanModel m({{"x", 2}, {"y", 3}}, {GradedPolynomial{}, A.power(gen(2, 0), 2)});
  auto v = validate(m);
  CHECK(v.validated());
  CHECK(v == m);
}

TEST_CASE("dy = y has a degree and a decomposability violation") {
  SullivanModel m({{"x", 2}, {"y", 3}}, {GradedPolynomial{}, gen(2, 1)});
  auto v = violations_of(m);
  REQUIRE(v.size() == 2);
  CHECK(v[0].condition == "degree shift");
  CHECK(v[1].condition == "decomposable");
  CHECK(v[0].generator == "y");
}

TEST_CASE("non-triangular differentials are rejected") {
  GradedAlgebra B({{"x", 2}, {"y", 3}, {"z", 2}});
  SullivanModel bad({{"x", 2}, {"y", 3}, {"z", 2}},
                    {GradedPolynomial{}, B.multiply(gen(3, 0), gen(3, 2)), GradedPolynomial{}});
  auto v = violations_of(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].condition == "triangular");
}

TEST_CASE("d squared must vanish") {
  // Λ(x:2, y:3, w:4) with dy = x^2, dw = xy: d(dw) = x^3 != 0.
  GradedAlgebra A({{"x", 2}, {"y", 3}, {"w", 4}});
  SullivanModel m({{"x", 2}, {"y", 3}, {"w", 4}},
                  {GradedPolynomial{}, A.power(gen(3, 0), 2), A.multiply(gen(3, 0), gen(3, 1))});
  auto v = violations_of(m);
  REQUIRE(v.size() == 1);
  CHECK(v[0].condition == "d squared");
  CHECK(v[0].generator == "w");
}

TEST_CASE("degree-one generators need the flag") {
  SullivanModel m({{"a", 1}}, {GradedPolynomial{}});
  auto v = violations_of(m);
  REQUIRE(v.size() == 1);
  CHECK(v[0].condition == "degree");
  CHECK(violations_of(SullivanModel({{"a", 1}}, {GradedPolynomial{}}, false)).empty());
  CHECK(violations_of(SullivanModel({{"a", 0}}, {GradedPolynomial{}}, false)).size() == 1);
}

TEST_CASE("duplicate names are rejected") {
  SullivanModel m({{"a", 3}, {"a", 3}}, {GradedPolynomial{}, GradedPolynomial{}});
  auto v = violations_of(m);
  REQUIRE(v.size() == 1);
  CHECK(v[0].condition == "name");
}

TEST_CASE("mismatched differential arity is a usage error") {
  CHECK_THROWS_AS(SullivanModel({{"a", 3}}, {}), UsageError);
}

TEST_CASE("length profiles") {
  CHECK(length_profile(library_model("example-5gen")) == LengthProfile{LengthProfile::Kind::Homogeneous, 2});
  CHECK(length_profile(library_model("cp:3")) == LengthProfile{LengthProfile::Kind::Homogeneous, 4});
  CHECK(length_profile(library_model("sphere:5")).kind == LengthProfile::Kind::Zero);
  auto mixed = length_profile(library_model("mixed-2"));
  CHECK(mixed.kind == LengthProfile::Kind::BoundedBelow);
  CHECK(mixed.l == 2);
  CHECK_FALSE(mixed.homogeneous());
  CHECK(mixed.describe() == "mixed (bounded_below(2))");
  CHECK(length_profile(library_model("sphere:5")).compatible_with(7));
}

TEST_CASE("quotient by the first generator") {
  auto m = library_model("cpl-sphere:3,1");
  auto w = quotient_model(m);
  CHECK(w.size() == 2);
  CHECK(w.generators()[0].name == "x");
  CHECK(w.validated());
  CHECK_THROWS_AS(quotient_model(m, 1), PreconditionError);
  auto s4 = library_model("sphere:4");
  auto q = quotient_model(s4);
  CHECK(q.d(0).is_zero());  // y becomes a cocycle
}

TEST_CASE("Wang derivation of the Heisenberg model") {
  auto h = library_model("heisenberg");
  auto theta = wang_derivation(h);
  CHECK(theta.degree_shift == 0);
  REQUIRE(theta.values.size() == 2);
  CHECK(theta.values[0].is_zero());                          // θ(b) = 0
  CHECK(theta.values[1] == GradedPolynomial::generator(2, 0));  // θ(c) = b
  CHECK_THROWS_AS(wang_derivation(library_model("cp:2")), PreconditionError);
}

TEST_CASE("Wang derivation commutes with the quotient differential") {
  for (const auto& m : library_instances()) {
    if (!m.generators()[0].odd() || !m.d(0).is_zero()) continue;
    auto theta = wang_derivation(m);
    auto w = quotient_model(m);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto v = w.generator(i);
      auto lhs = w.d(w.algebra().apply(theta, v));
      auto rhs = w.algebra().apply(theta, w.d(v));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("divide_by_first rejects terms without x1") {
  GradedAlgebra A({{"x", 2}, {"y", 3}});
  CHECK_THROWS_AS(divide_by_first(A, GradedPolynomial::generator(2, 1)), InternalError);
  auto xy = A.multiply(gen(2, 0), gen(2, 1));
  CHECK(divide_by_first(A, xy) == gen(2, 1));
}

#include <catch_amalgamated.hpp>

#include "sullivan/algebra.hpp"

using namespace sullivan;

namespace {

// x:2, y:3, z:3, w:4
GradedAlgebra sample() { return GradedAlgebra({{"x", 2}, {"y", 3}, {"z", 3}, {"w", 4}}); }

Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

}  // namespace

TEST_CASE("degree and word length") {
  auto A = sample();
  CHECK(A.degree(mono({2, 1, 0, 1})) == 11);
  CHECK(mono({2, 1, 0, 1}).word_length() == 4);
  CHECK(mono({0, 0, 0, 0}).is_one());
  CHECK_THROWS_AS(A.degree(mono({1})), UsageError);
}

TEST_CASE("odd generators anticommute") {
  auto A = sample();
  const auto y = mono({0, 1, 0, 0}), z = mono({0, 0, 1, 0});
  CHECK(A.koszul_sign(y, z) == 1);
  CHECK(A.koszul_sign(z, y) == -1);
  CHECK(A.koszul_sign(y, y) == 0);
  auto [s, m] = A.multiply(z, y);
  CHECK(s == -1);
  CHECK(m == mono({0, 1, 1, 0}));
}

TEST_CASE("even generators commute with everything") {
  auto A = sample();
  const auto x = mono({1, 0, 0, 0}), z = mono({0, 0, 1, 0}), w = mono({0, 0, 0, 1});
  CHECK(A.koszul_sign(z, x) == 1);
  CHECK(A.koszul_sign(w, z) == 1);
  CHECK(A.koszul_sign(x, x) == 1);
}

TEST_CASE("polynomial arithmetic drops zero terms") {
  auto A = sample();
  auto y = GradedPolynomial::generator(4, 1), z = GradedPolynomial::generator(4, 2);
  auto yz = A.multiply(y, z), zy = A.multiply(z, y);
  CHECK((yz + zy).is_zero());
  CHECK(A.multiply(y, y).is_zero());
  auto x = GradedPolynomial::generator(4, 0);
  CHECK(A.power(x, 3).coefficient(mono({3, 0, 0, 0})) == 1);
  CHECK(A.power(x, 0) == GradedPolynomial::one(4));
}

TEST_CASE("polynomial degree requires homogeneity") {
  auto A = sample();
  auto x = GradedPolynomial::generator(4, 0), w = GradedPolynomial::generator(4, 3);
  CHECK(A.degree(A.multiply(x, x) + w) == 4);
  CHECK_FALSE(A.degree(GradedPolynomial{}).has_value());
  CHECK_THROWS_AS(A.degree(x + w), UsageError);
}

TEST_CASE("derivation on a product follows the Leibniz rule") {
  // d y = x^2, d z = x^2 on Λ(x, y, z): d(yz) = x^2 z - y x^2.
  GradedAlgebra A({{"x", 2}, {"y", 3}, {"z", 3}});
  auto x2 = A.power(GradedPolynomial::generator(3, 0), 2);
  Derivation d{1, {GradedPolynomial{}, x2, x2}};
  auto yz = GradedPolynomial(mono({0, 1, 1}), 1);
  auto dyz = A.apply(d, yz);
  CHECK(dyz.coefficient(mono({2, 0, 1})) == 1);
  CHECK(dyz.coefficient(mono({2, 1, 0})) == -1);
  // d^2 = 0 on this algebra.
  CHECK(A.apply(d, dyz).is_zero());
}

TEST_CASE("derivation on powers of an even generator") {
  GradedAlgebra A({{"x", 2}, {"t", 2}});
  Derivation D{0, {GradedPolynomial::generator(2, 1), GradedPolynomial{}}};  // x -> t
  auto x3 = A.power(GradedPolynomial::generator(2, 0), 3);
  CHECK(A.apply(D, x3) == Rational(3) * GradedPolynomial(mono({2, 1}), 1));
}

TEST_CASE("monomial basis enumeration") {
  auto A = sample();
  auto six = A.monomial_basis(6);
  // Degree 6: y*z, x*w, x^3.
  REQUIRE(six.size() == 3);
  CHECK(six[0] == mono({0, 1, 1, 0}));
  CHECK(A.monomial_basis(6, std::nullopt, 2).size() == 2);
  CHECK(A.monomial_basis(6, 2).size() == 2);
  CHECK(A.monomial_basis(0).size() == 1);
  CHECK(A.monomial_basis(-1).empty());
  CHECK(A.monomial_basis(1).empty());
  for (int d = 0; d <= 12; ++d)
    for (const auto& m : A.monomial_basis(d)) {
      CHECK(A.degree(m) == d);
      CHECK(A.is_valid(m));
    }
}

TEST_CASE("derivation arity is checked") {
  auto A = sample();
  CHECK_THROWS_AS(A.apply(Derivation{1, {}}, GradedPolynomial::one(4)), UsageError);
}

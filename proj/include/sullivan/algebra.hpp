#pragma once

// Free graded-commutative algebra on a finite list of generators.
//
// A monomial is its exponent vector in generator order; that vector is the
// canonical form. Odd generators carry exponent 0 or 1. Signs appear only when
// a product is normalized back into generator order.

#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/linalg.hpp"

namespace sullivan {

struct Generator {
  std::string name;
  int degree = 0;

  bool odd() const noexcept { return degree % 2 != 0; }
  friend bool operator==(const Generator&, const Generator&) = default;
};

struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::size_t generators) : exponents(generators, 0) {}
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}

  static Monomial unit(std::size_t generators, std::size_t index) {
    Monomial m(generators);
    m.exponents.at(index) = 1;
    return m;
  }

  int word_length() const noexcept { return std::accumulate(exponents.begin(), exponents.end(), 0); }
  bool is_one() const noexcept { return word_length() == 0; }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

class GradedPolynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  GradedPolynomial() = default;
  GradedPolynomial(const Monomial& m, const Rational& c) { add_term(m, c); }

  static GradedPolynomial one(std::size_t generators) { return {Monomial(generators), Rational(1)}; }
  static GradedPolynomial generator(std::size_t generators, std::size_t index) {
    return {Monomial::unit(generators, index), Rational(1)};
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedPolynomial& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator-(GradedPolynomial a) { return a *= Rational(-1); }
  friend GradedPolynomial operator*(const Rational& s, GradedPolynomial a) { return a *= s; }
  friend bool operator==(const GradedPolynomial&, const GradedPolynomial&) = default;

  /// Smallest and largest word length among the terms.
  std::optional<std::pair<int, int>> length_range() const {
    if (terms_.empty()) return std::nullopt;
    int lo = terms_.begin()->first.word_length();
    int hi = lo;
    for (const auto& [m, c] : terms_) {
      lo = std::min(lo, m.word_length());
      hi = std::max(hi, m.word_length());
    }
    return std::pair{lo, hi};
  }

  /// Terms of word length at most n.
  GradedPolynomial truncated(int n) const {
    GradedPolynomial out;
    for (const auto& [m, c] : terms_)
      if (m.word_length() <= n) out.terms_.emplace(m, c);
    return out;
  }

 private:
  Terms terms_;
};

/// A derivation of the given degree, fixed by its values on generators.
struct Derivation {
  int degree_shift = 0;
  std::vector<GradedPolynomial> values;
};

/// The free graded-commutative algebra on an ordered generator list.
class GradedAlgebra {
 public:
  GradedAlgebra() = default;
  explicit GradedAlgebra(std::vector<Generator> generators) : generators_(std::move(generators)) {}

  const std::vector<Generator>& generators() const noexcept { return generators_; }
  std::size_t size() const noexcept { return generators_.size(); }

  int degree(const Monomial& m) const {
    check(m);
    int d = 0;
    for (std::size_t i = 0; i < generators_.size(); ++i) d += m.exponents[i] * generators_[i].degree;
    return d;
  }

  /// Degree of a polynomial whose terms share one degree; nullopt for zero.
  std::optional<int> degree(const GradedPolynomial& p) const {
    if (p.is_zero()) return std::nullopt;
    int d = degree(p.terms().begin()->first);
    for (const auto& [m, c] : p.terms())
      if (degree(m) != d) throw UsageError("polynomial is not homogeneous in degree");
    return d;
  }

  bool is_valid(const Monomial& m) const {
    if (m.exponents.size() != generators_.size()) return false;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (m.exponents[i] < 0) return false;
      if (generators_[i].odd() && m.exponents[i] > 1) return false;
    }
    return true;
  }

  /// Sign of a*b relative to the canonical monomial of the product, or 0 when
  /// the product vanishes because an odd generator repeats.
  int koszul_sign(const Monomial& a, const Monomial& b) const {
    check(a);
    check(b);
    int transpositions = 0;
    int odd_in_a_after = 0;  // odd generators of a with index > current
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i].odd()) odd_in_a_after += a.exponents[i];
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      if (!generators_[j].odd()) continue;
      odd_in_a_after -= a.exponents[j];
      if (a.exponents[j] > 0 && b.exponents[j] > 0) return 0;
      if (b.exponents[j] > 0) transpositions += odd_in_a_after;
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const {
    int s = koszul_sign(a, b);
    Monomial m(generators_.size());
    if (s == 0) return {0, m};
    for (std::size_t i = 0; i < generators_.size(); ++i) m.exponents[i] = a.exponents[i] + b.exponents[i];
    return {s, m};
  }

  GradedPolynomial multiply(const GradedPolynomial& a, const GradedPolynomial& b) const {
    GradedPolynomial out;
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        auto [s, m] = multiply(ma, mb);
        if (s == 0) continue;
        Rational c = ca * cb;
        if (s < 0) c = -c;
        out.add_term(m, c);
      }
    }
    return out;
  }

  GradedPolynomial power(const GradedPolynomial& a, int n) const {
    GradedPolynomial out = GradedPolynomial::one(size());
    for (int i = 0; i < n; ++i) out = multiply(out, a);
    return out;
  }

  /// Apply a derivation using D(ab) = D(a)b + (-1)^{shift*|a|} a D(b).
  GradedPolynomial apply(const Derivation& D, const GradedPolynomial& p) const {
    if (D.values.size() != generators_.size())
      throw UsageError("derivation has " + std::to_string(D.values.size()) + " values for " +
                       std::to_string(generators_.size()) + " generators");
    GradedPolynomial out;
    for (const auto& [m, c] : p.terms()) {
      GradedPolynomial dm = apply(D, m);
      dm *= c;
      out += dm;
    }
    return out;
  }

  GradedPolynomial apply(const Derivation& D, const Monomial& m) const {
    check(m);
    GradedPolynomial out;
    Monomial prefix(generators_.size());
    int prefix_degree = 0;
    for (std::size_t j = 0; j < generators_.size(); ++j) {
      const int e = m.exponents[j];
      if (e > 0 && !D.values[j].is_zero()) {
        Monomial rest(generators_.size());
        rest.exponents[j] = e - 1;
        for (std::size_t t = j + 1; t < generators_.size(); ++t) rest.exponents[t] = m.exponents[t];
        GradedPolynomial term = multiply(multiply(GradedPolynomial(prefix, 1), D.values[j]),
                                         GradedPolynomial(rest, 1));
        Rational f = e;
        if ((D.degree_shift * prefix_degree) % 2 != 0) f = -f;
        term *= f;
        out += term;
      }
      prefix.exponents[j] = e;
      prefix_degree += e * generators_[j].degree;
    }
    return out;
  }

  /// All monomials of the given degree in increasing exponent-vector order,
  /// optionally restricted to word length <= max_length or == exact_length.
  std::vector<Monomial> monomial_basis(int degree, std::optional<int> max_length = std::nullopt,
                                       std::optional<int> exact_length = std::nullopt) const {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    for (const auto& g : generators_)
      if (g.degree < 1) throw UsageError("generator " + g.name + " has non-positive degree");
    Monomial cur(generators_.size());
    enumerate(0, degree, 0, max_length, exact_length, cur, out);
    return out;
  }

 private:
  void check(const Monomial& m) const {
    if (m.exponents.size() != generators_.size())
      throw UsageError("monomial has " + std::to_string(m.exponents.size()) + " exponents for " +
                       std::to_string(generators_.size()) + " generators");
  }

  void enumerate(std::size_t index, int remaining, int length, std::optional<int> max_length,
                 std::optional<int> exact_length, Monomial& cur, std::vector<Monomial>& out) const {
    if (index == generators_.size()) {
      if (remaining == 0 && (!exact_length || length == *exact_length)) out.push_back(cur);
      return;
    }
    const int deg = generators_[index].degree;
    int max_e = remaining / deg;
    if (generators_[index].odd()) max_e = std::min(max_e, 1);
    for (int e = 0; e <= max_e; ++e) {
      const int len = length + e;
      if (max_length && len > *max_length) break;
      if (exact_length && len > *exact_length) break;
      cur.exponents[index] = e;
      enumerate(index + 1, remaining - e * deg, len, max_length, exact_length, cur, out);
    }
    cur.exponents[index] = 0;
  }

  std::vector<Generator> generators_;
};

}  // namespace sullivan

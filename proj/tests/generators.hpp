#pragma once

// Hand-rolled random generators shared by the property tests and the
// acceptance run. Everything is deterministic in the seed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sullivan/parser.hpp"
#include "sullivan/random_model.hpp"

namespace gen {

using namespace sullivan;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational coefficient(Rng& rng) {
  int num = 0;
  while (num == 0) num = uniform(rng, -5, 5);
  return make_rational(num, uniform(rng, 1, 3));
}

/// 1-5 generators of degree 1-6, named g0, g1, ...
inline GradedAlgebra algebra(Rng& rng) {
  std::vector<Generator> gens;
  const int n = uniform(rng, 1, 5);
  for (int i = 0; i < n; ++i) gens.push_back({"g" + std::to_string(i), uniform(rng, 1, 6)});
  return GradedAlgebra(gens);
}

/// Random element of the given degree with up to `max_terms` terms.
inline GradedPolynomial homogeneous(Rng& rng, const GradedAlgebra& A, int degree, int max_terms = 4) {
  GradedPolynomial p;
  auto basis = A.monomial_basis(degree);
  if (basis.empty()) return p;
  const int terms = uniform(rng, 0, max_terms);
  for (int t = 0; t < terms; ++t) p.add_term(basis[uniform(rng, 0, int(basis.size()) - 1)], coefficient(rng));
  return p;
}

inline int degree(Rng& rng) { return uniform(rng, 0, 9); }

/// Arbitrary derivation of the given shift; no d^2 = 0 requirement.
inline Derivation derivation(Rng& rng, const GradedAlgebra& A, int shift) {
  Derivation D{shift, {}};
  for (const auto& g : A.generators()) D.values.push_back(homogeneous(rng, A, g.degree + shift, 3));
  return D;
}

/// All-odd homogeneous length-2 models: a cocycle u and further degree-3
/// cocycles, then degree-5 generators whose differentials are sums of
/// products of the degree-3 ones. Such models are always elliptic.
inline SullivanModel wang_model(std::uint64_t seed) {
  Rng rng(seed);
  const int low = uniform(rng, 2, 3);
  const int high = uniform(rng, 1, 3);
  std::vector<Generator> gens = {{"u", 3}};
  for (int i = 1; i < low; ++i) gens.push_back({"a" + std::to_string(i), 3});
  for (int j = 0; j < high; ++j) gens.push_back({"c" + std::to_string(j + 1), 5});
  const std::size_t n = gens.size();
  std::vector<GradedPolynomial> d(n);
  for (int j = 0; j < high; ++j) {
    GradedPolynomial dc;
    while (dc.is_zero()) {
      for (int a = 0; a < low; ++a)
        for (int b = a + 1; b < low; ++b) {
          if (uniform(rng, 0, 1) == 0) continue;
          Monomial m(n);
          m.exponents[a] = m.exponents[b] = 1;
          dc.add_term(m, Rational(uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1)));
        }
    }
    d[low + j] = dc;
  }
  return validate(SullivanModel(gens, d, true, "wang:" + std::to_string(seed)));
}

/// Seeded pure homogeneous model; seeds whose shape admits no certified
/// model are skipped.
inline std::vector<SullivanModel> pure_corpus(std::size_t count, std::uint64_t first_seed) {
  std::vector<SullivanModel> out;
  for (std::uint64_t s = first_seed; out.size() < count; ++s) {
    try {
      out.push_back(random_elliptic_model(s, random_shape(s, false)));
    } catch (const PreconditionError&) {
    }
  }
  return out;
}

/// Seeded models whose differentials may mix word lengths; only those that
/// actually came out non-homogeneous are kept.
inline std::vector<SullivanModel> mixed_corpus(std::size_t count, std::uint64_t first_seed) {
  std::vector<SullivanModel> out;
  for (std::uint64_t s = first_seed; out.size() < count; ++s) {
    try {
      auto m = random_elliptic_model(s, random_shape(s, true));
      if (!length_profile(m).homogeneous()) out.push_back(m);
    } catch (const PreconditionError&) {
    }
  }
  return out;
}

/// Same model text with semantics-preserving noise: comments, blank lines,
/// extra spaces, explicit unit coefficients and redundant parentheses.
inline std::string noisy_text(Rng& rng, const SullivanModel& m) {
  std::string out;
  auto spaces = [&] { return std::string(uniform(rng, 0, 2), ' '); };
  if (!m.simply_connected()) out += "flag non-simply-connected\n";
  for (const auto& g : m.generators()) {
    if (uniform(rng, 0, 3) == 0) out += "# comment\n\n";
    out += spaces() + "gen " + g.name + "  " + std::to_string(g.degree) + spaces() + "\n";
  }
  const auto& A = m.algebra();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.d(i).is_zero()) continue;
    out += "d " + m.generators()[i].name + spaces() + "=";
    bool first = true;
    for (const auto& [mono, c] : m.d(i).terms()) {
      Rational a = abs(c);
      out += first ? (sgn(c) < 0 ? " -" : " ") : (sgn(c) < 0 ? " - " : " + ");
      first = false;
      std::string factor = format_monomial(A, mono);
      if (uniform(rng, 0, 1)) factor = "(" + factor + ")";
      out += a.get_str() + spaces() + "*" + spaces() + factor;
    }
    out += uniform(rng, 0, 1) ? "  # trailing\n" : "\n";
  }
  return out;
}

}  // namespace gen

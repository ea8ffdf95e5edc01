#pragma once

// Seeded random pure models: even cocycle generators followed by odd
// generators whose differentials are polynomials in the evens. Candidates are
// rejection-sampled until the ellipticity certificate accepts one.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sullivan/cohomology.hpp"

namespace sullivan {

struct RandomModelParams {
  int evens = 2;
  int odds = 2;
  int length = 2;
  std::vector<int> even_degrees = {2, 4};
  int coefficient_range = 3;  // nonzero coefficients drawn from [-range, range]
  int max_attempts = 200;
  bool mixed = false;         // allow terms of length > length as well
  int max_formal_dimension = 40;
};

namespace detail {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational random_coefficient(std::mt19937_64& rng, int range) {
  int c = 0;
  while (c == 0) c = uniform(rng, -range, range);
  return c;
}

/// Random monomial of the given word length in the first `evens` generators.
inline Monomial random_even_monomial(std::mt19937_64& rng, std::size_t total, int evens, int length) {
  Monomial m(total);
  for (int t = 0; t < length; ++t) m.exponents[uniform(rng, 0, evens - 1)] += 1;
  return m;
}

inline SullivanModel random_candidate(std::mt19937_64& rng, const RandomModelParams& p, std::uint64_t seed) {
  const std::size_t total = static_cast<std::size_t>(p.evens + p.odds);
  std::vector<Generator> gens;
  for (int i = 0; i < p.evens; ++i)
    gens.push_back({"x" + std::to_string(i + 1), p.even_degrees[uniform(rng, 0, int(p.even_degrees.size()) - 1)]});
  GradedAlgebra evens_only(gens);
  std::vector<int> odd_degrees;
  for (int j = 0; j < p.odds; ++j) {
    Monomial m = random_even_monomial(rng, static_cast<std::size_t>(p.evens), p.evens, p.length);
    odd_degrees.push_back(evens_only.degree(m) - 1);
  }
  for (int j = 0; j < p.odds; ++j) gens.push_back({"y" + std::to_string(j + 1), odd_degrees[j]});

  GradedAlgebra A(gens);
  GradedAlgebra E(std::vector<Generator>(gens.begin(), gens.begin() + p.evens));
  std::vector<GradedPolynomial> diff(total);
  for (int j = 0; j < p.odds; ++j) {
    const int target = odd_degrees[j] + 1;
    std::vector<Monomial> candidates;
    for (auto& m : E.monomial_basis(target)) {
      const int len = m.word_length();
      if (len == p.length || (p.mixed && len > p.length)) candidates.push_back(m);
    }
    GradedPolynomial dy;
    while (dy.is_zero()) {
      for (const auto& m : candidates) {
        if (uniform(rng, 0, 2) == 0) continue;
        Monomial full(total);
        std::copy(m.exponents.begin(), m.exponents.end(), full.exponents.begin());
        dy.add_term(full, random_coefficient(rng, p.coefficient_range));
      }
    }
    diff[p.evens + j] = std::move(dy);
  }
  return SullivanModel(std::move(gens), std::move(diff), true, "random:" + std::to_string(seed));
}

}  // namespace detail

/// Deterministic in (seed, params). Throws PreconditionError when no
/// certified candidate appears within max_attempts draws.
inline SullivanModel random_elliptic_model(std::uint64_t seed, const RandomModelParams& params = {}) {
  if (params.evens < 1 || params.odds < params.evens || params.length < 2 || params.even_degrees.empty())
    throw UsageError("random_elliptic_model: need evens >= 1, odds >= evens, length >= 2");
  for (int d : params.even_degrees)
    if (d < 2 || d % 2 != 0) throw UsageError("random_elliptic_model: even degrees must be even and >= 2");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    SullivanModel candidate = validate(detail::random_candidate(rng, params, seed));
    const int N = formal_dimension_formula(candidate);
    if (N < 0 || N > params.max_formal_dimension) continue;
    Cohomology engine(candidate);
    if (certify_elliptic(engine).certified()) return candidate;
  }
  throw PreconditionError("random_elliptic_model: no certified model after " +
                          std::to_string(params.max_attempts) + " attempts (seed " + std::to_string(seed) + ")");
}

/// Shape drawn from the seed itself: 1-3 evens, evens..evens+1 odds, length 2-4.
inline RandomModelParams random_shape(std::uint64_t seed, bool mixed = false) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  RandomModelParams p;
  p.evens = detail::uniform(rng, 1, 3);
  p.odds = p.evens + detail::uniform(rng, 0, 1);
  p.length = detail::uniform(rng, 2, p.evens >= 3 ? 3 : 4);
  p.mixed = mixed;
  return p;
}

}  // namespace sullivan

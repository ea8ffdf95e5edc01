#pragma once

// Cohomology of a Sullivan model, degree by degree and, for homogeneous
// differentials, by (degree, word length).
//
// Every group keeps its cochain basis, the boundary subspace in reduced
// echelon form, and class representatives reduced against the boundaries.
// Groups are memoized per key; each key is computed at most once per engine.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/errors.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/model.hpp"
#include "sullivan/parallel.hpp"

namespace sullivan {

/// Monomials of one degree (and optionally one word length).
struct CochainSlice {
  int degree = 0;
  std::optional<int> length;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;

  std::size_t size() const noexcept { return basis.size(); }

  bool contains(const GradedPolynomial& p) const {
    for (const auto& [m, c] : p.terms())
      if (!index.contains(m)) return false;
    return true;
  }

  Vector to_vector(const GradedPolynomial& p) const {
    Vector v(basis.size());
    for (const auto& [m, c] : p.terms()) {
      auto it = index.find(m);
      if (it == index.end())
        throw UsageError("polynomial has a term outside the degree-" + std::to_string(degree) +
                         (length ? " length-" + std::to_string(*length) : std::string{}) + " slice");
      v[it->second] = c;
    }
    return v;
  }

  GradedPolynomial to_polynomial(const Vector& v) const {
    GradedPolynomial p;
    for (std::size_t j = 0; j < v.size(); ++j) p.add_term(basis[j], v[j]);
    return p;
  }
};

struct CohomologyClass {
  int degree = 0;
  GradedPolynomial representative;
  std::optional<int> length;
};

struct CohomologyGroup {
  CochainSlice slice;
  Subspace boundaries;
  Subspace classes;  // reduced representatives, zero on boundary pivots
  std::size_t cocycle_dimension = 0;

  int degree() const noexcept { return slice.degree; }
  std::optional<int> length() const noexcept { return slice.length; }
  std::size_t dimension() const noexcept { return classes.dimension(); }

  GradedPolynomial representative(std::size_t j) const { return slice.to_polynomial(classes.basis().at(j)); }

  std::vector<CohomologyClass> class_basis() const {
    std::vector<CohomologyClass> out;
    for (std::size_t j = 0; j < dimension(); ++j) out.push_back({degree(), representative(j), length()});
    return out;
  }

  bool is_coboundary(const GradedPolynomial& p) const {
    return slice.contains(p) && boundaries.contains(slice.to_vector(p));
  }

  /// Class coordinates of a cocycle; nullopt if p is not a cocycle of this slice.
  std::optional<Vector> try_coordinates(const GradedPolynomial& p) const {
    if (!slice.contains(p)) return std::nullopt;
    return classes.coordinates(boundaries.reduce(slice.to_vector(p)));
  }

  Vector coordinates(const GradedPolynomial& p) const {
    auto c = try_coordinates(p);
    if (!c) throw UsageError("element is not a cocycle in degree " + std::to_string(degree()));
    return *c;
  }
};

struct EllipticityCertificate {
  enum class Status { Certified, Refuted, Inconclusive };

  Status status = Status::Inconclusive;
  int formal_dimension = 0;
  int window = 0;
  std::optional<int> witness_degree;
  std::string reason;
  bool heuristic = true;

  bool certified() const noexcept { return status == Status::Certified; }

  std::string status_name() const {
    switch (status) {
      case Status::Certified: return "certified";
      case Status::Refuted: return "refuted";
      case Status::Inconclusive: return "inconclusive";
    }
    return {};
  }
};

struct PairingResult {
  RatMatrix matrix;
  bool nondegenerate = false;
};

struct CohomologyTable {
  std::vector<std::size_t> betti;
  int formal_dimension = 0;
  std::size_t total = 0;
  std::vector<std::vector<GradedPolynomial>> representatives;
};

struct BigradedTable {
  int formal_dimension = 0;
  int e = 0;
  std::vector<std::vector<std::size_t>> h;  // h[i][k], 0 <= i <= N
  std::vector<std::optional<int>> n;         // n[k], k = 0..e
  std::vector<std::optional<int>> N;         // N[k], k = 0..e

  std::size_t length_total(int k) const {
    std::size_t s = 0;
    for (const auto& row : h)
      if (k < static_cast<int>(row.size())) s += row[k];
    return s;
  }
};

/// N = sum of odd degrees - sum over even generators of (degree - 1).
inline int formal_dimension_formula(const SullivanModel& model) {
  int n = 0;
  for (const auto& g : model.generators()) n += g.odd() ? g.degree : -(g.degree - 1);
  return n;
}

class Cohomology {
 public:
  explicit Cohomology(const SullivanModel& model)
      : model_(model.validated() ? model : validate(model)), profile_(length_profile(model_)) {}

  Cohomology(const Cohomology&) = delete;
  Cohomology& operator=(const Cohomology&) = delete;

  const SullivanModel& model() const noexcept { return model_; }
  const LengthProfile& profile() const noexcept { return profile_; }
  const GradedAlgebra& algebra() const noexcept { return model_.algebra(); }

  std::shared_ptr<const CochainSlice> slice(int degree, std::optional<int> length = std::nullopt) const {
    const Key key{degree, length.value_or(-1)};
    {
      std::lock_guard lock(mutex_);
      if (auto it = slices_.find(key); it != slices_.end()) return it->second;
    }
    auto s = std::make_shared<CochainSlice>();
    s->degree = degree;
    s->length = length;
    s->basis = algebra().monomial_basis(degree, std::nullopt, length);
    for (std::size_t j = 0; j < s->basis.size(); ++j) s->index.emplace(s->basis[j], j);
    std::lock_guard lock(mutex_);
    return slices_.emplace(key, std::move(s)).first->second;
  }

  /// d of each basis monomial of a slice, in basis order.
  std::shared_ptr<const std::vector<GradedPolynomial>> images(int degree, std::optional<int> length = std::nullopt) const {
    const Key key{degree, length.value_or(-1)};
    {
      std::lock_guard lock(mutex_);
      if (auto it = images_.find(key); it != images_.end()) return it->second;
    }
    auto src = slice(degree, length);
    auto out = std::make_shared<std::vector<GradedPolynomial>>();
    out->reserve(src->size());
    for (const auto& m : src->basis) out->push_back(model_.d(GradedPolynomial(m, 1)));
    std::lock_guard lock(mutex_);
    return images_.emplace(key, std::move(out)).first->second;
  }

  /// Matrix of d from the degree-i slice (all lengths, or one length) into
  /// the full degree-(i+1) slice. Columns follow the source basis.
  RatMatrix differential_matrix(int degree, std::optional<int> length = std::nullopt) const {
    auto src = slice(degree, length);
    auto dst = slice(degree + 1);
    auto img = images(degree, length);
    RatMatrix m(dst->size(), src->size());
    for (std::size_t c = 0; c < src->size(); ++c) {
      for (const auto& [mono, coeff] : (*img)[c].terms()) {
        auto it = dst->index.find(mono);
        if (it == dst->index.end()) throw InternalError("d left its target degree");
        m.set(it->second, c, coeff);
      }
    }
    return m;
  }

  std::shared_ptr<const CohomologyGroup> group(int degree) const { return cached(degree, std::nullopt); }

  std::shared_ptr<const CohomologyGroup> bigraded_group(int degree, int length) const {
    require_homogeneous("bigraded_group");
    return cached(degree, length);
  }

  std::size_t betti(int degree) const { return degree < 0 ? 0 : group(degree)->dimension(); }

  std::size_t bigraded_dimension(int degree, int length) const {
    if (degree < 0 || length < 0) return 0;
    return bigraded_group(degree, length)->dimension();
  }

  /// Whether H^degree = 0. Ranks mod p never exceed ranks over Q, and
  /// rank d_{i-1} + rank d_i <= dim C^i since d^2 = 0, so a mod-p count that
  /// fills the slice is a proof. Otherwise falls back to the exact group.
  bool vanishes(int degree) const {
    if (degree < 0) return true;
    {
      std::lock_guard lock(mutex_);
      if (auto it = groups_.find(Key{degree, -1}); it != groups_.end()) return it->second->dimension() == 0;
    }
    const std::size_t n = slice(degree)->size();
    if (n == 0) return true;
    auto in = degree > 0 ? rank_mod_p(differential_matrix(degree - 1)) : std::optional<std::size_t>(0);
    auto out = rank_mod_p(differential_matrix(degree));
    if (in && out && *in + *out == n) return true;
    return betti(degree) == 0;
  }

  /// Class coordinates of a cocycle p of the given degree (and length).
  Vector coordinates(const GradedPolynomial& p, int degree, std::optional<int> length = std::nullopt) const {
    auto g = length ? bigraded_group(degree, *length) : group(degree);
    if (!g->slice.contains(p) || !model_.d(p).is_zero())
      throw InternalError("expected a cocycle of degree " + std::to_string(degree) +
                          (length ? " and length " + std::to_string(*length) : std::string{}));
    return g->coordinates(p);
  }

  /// Largest word length of any monomial of degree at most max_degree.
  int max_word_length(int max_degree) const {
    int best = 0;
    for (int i = 0; i <= max_degree; ++i)
      for (const auto& m : slice(i)->basis) best = std::max(best, m.word_length());
    return best;
  }

  /// Computes groups for degrees [0, max_degree] on the worker pool.
  void precompute(int max_degree, bool bigraded = false) const {
    if (max_degree < 0) return;
    parallel_for(static_cast<std::size_t>(max_degree + 1), [&](std::size_t i) { group(static_cast<int>(i)); });
    if (bigraded && profile_.homogeneous()) {
      for (int i = 0; i <= max_degree; ++i) {
        const int kmax = max_word_length(i);
        for (int k = 0; k <= kmax; ++k) bigraded_group(i, k);
      }
    }
  }

 private:
  using Key = std::pair<int, int>;

  void require_homogeneous(const char* what) const {
    if (!profile_.homogeneous())
      throw PreconditionError(std::string(what) + ": differential is " + profile_.describe() +
                              "; use the ungraded cohomology instead");
  }

  std::shared_ptr<const CohomologyGroup> cached(int degree, std::optional<int> length) const {
    if (degree < 0) throw UsageError("negative cohomology degree");
    const Key key{degree, length.value_or(-1)};
    {
      std::lock_guard lock(mutex_);
      if (auto it = groups_.find(key); it != groups_.end()) return it->second;
    }
    auto g = compute(degree, length);
    std::lock_guard lock(mutex_);
    return groups_.emplace(key, std::move(g)).first->second;
  }

  std::shared_ptr<const CohomologyGroup> compute(int degree, std::optional<int> length) const {
    auto g = std::make_shared<CohomologyGroup>();
    g->slice = *slice(degree, length);
    const std::size_t n = g->slice.size();

    std::vector<Vector> bounds;
    if (degree > 0) {
      std::shared_ptr<const std::vector<GradedPolynomial>> sources;
      if (!length) {
        sources = images(degree - 1);
      } else if (profile_.kind == LengthProfile::Kind::Homogeneous) {
        const int src_len = *length - profile_.l + 1;
        if (src_len >= 0) sources = images(degree - 1, src_len);
      }
      for (const auto& image : sources ? *sources : std::vector<GradedPolynomial>{}) {
        if (image.is_zero()) continue;
        if (!g->slice.contains(image)) throw InternalError("boundary left its (degree, length) slice");
        bounds.push_back(g->slice.to_vector(image));
      }
    }
    g->boundaries = Subspace(n, bounds);

    std::vector<Vector> cocycles = n == 0 ? std::vector<Vector>{} : kernel_basis(differential_matrix(degree, length));
    g->cocycle_dimension = cocycles.size();
    for (auto& z : cocycles) z = g->boundaries.reduce(std::move(z));
    g->classes = Subspace(n, cocycles);
    if (g->classes.dimension() + g->boundaries.dimension() != g->cocycle_dimension)
      throw InternalError("boundaries are not contained in cocycles (d^2 != 0?)");
    return g;
  }

  SullivanModel model_;
  LengthProfile profile_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::shared_ptr<const CochainSlice>> slices_;
  mutable std::map<Key, std::shared_ptr<const std::vector<GradedPolynomial>>> images_;
  mutable std::map<Key, std::shared_ptr<const CohomologyGroup>> groups_;
};

inline std::shared_ptr<const CohomologyGroup> cohomology(const Cohomology& engine, int degree) {
  return engine.group(degree);
}

inline std::shared_ptr<const CohomologyGroup> bigraded_cohomology(const Cohomology& engine, int degree,
                                                                  int length) {
  return engine.bigraded_group(degree, length);
}

inline CohomologyTable cohomology_table(const Cohomology& engine, int top_degree) {
  CohomologyTable t;
  t.formal_dimension = -1;
  for (int i = 0; i <= top_degree; ++i) {
    auto g = engine.group(i);
    t.betti.push_back(g->dimension());
    std::vector<GradedPolynomial> reps;
    for (std::size_t j = 0; j < g->dimension(); ++j) reps.push_back(g->representative(j));
    t.representatives.push_back(std::move(reps));
    t.total += g->dimension();
    if (g->dimension() > 0) t.formal_dimension = i;
  }
  return t;
}

inline long euler_characteristic(const Cohomology& engine, int top_degree) {
  long chi = 0;
  for (int i = 0; i <= top_degree; ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(engine.betti(i));
  return chi;
}

/// The generator of H^N with its first basis coefficient normalized to 1.
inline CohomologyClass fundamental_class(const Cohomology& engine) {
  const int N = formal_dimension_formula(engine.model());
  if (N < 0) throw PreconditionError("fundamental_class: negative formal dimension; model is not elliptic");
  auto g = engine.group(N);
  if (g->dimension() != 1)
    throw PreconditionError("fundamental_class: dim H^" + std::to_string(N) + " = " +
                            std::to_string(g->dimension()) + ", expected 1");
  return {N, g->representative(0), std::nullopt};
}

/// H^i x H^{N-i} -> H^N = Q, read off on the fundamental class.
inline PairingResult pd_pairing(const Cohomology& engine, int i) {
  const auto mu = fundamental_class(engine);
  const int N = mu.degree;
  auto top = engine.group(N);
  auto left = engine.group(i);
  auto right = engine.group(N - i);
  PairingResult out;
  out.matrix = RatMatrix(left->dimension(), right->dimension());
  for (std::size_t a = 0; a < left->dimension(); ++a) {
    for (std::size_t b = 0; b < right->dimension(); ++b) {
      GradedPolynomial prod = engine.algebra().multiply(left->representative(a), right->representative(b));
      out.matrix.set(a, b, top->coordinates(prod).at(0));
    }
  }
  out.nondegenerate = left->dimension() == right->dimension() && rank(out.matrix) == left->dimension();
  return out;
}

/// Heuristic ellipticity check: H^i = 0 for N < i <= N + window, dim H^N = 1,
/// and every Poincaré pairing nondegenerate. window defaults to N.
inline EllipticityCertificate certify_elliptic(const Cohomology& engine, std::optional<int> window = std::nullopt,
                                               int max_degree = 600) {
  using Status = EllipticityCertificate::Status;
  EllipticityCertificate cert;
  const int N = formal_dimension_formula(engine.model());
  cert.formal_dimension = N;
  cert.window = window.value_or(std::max(N, 0));
  if (cert.window < 0) throw UsageError("certify_elliptic: window must be non-negative");

  if (N < 0) {
    cert.status = Status::Refuted;
    const int reach = std::max(cert.window, 2 * engine.model().max_generator_degree());
    for (int i = 1; i <= reach; ++i) {
      if (!engine.vanishes(i)) {
        cert.witness_degree = i;
        break;
      }
    }
    if (!cert.witness_degree) cert.witness_degree = 0;
    cert.reason = "formula gives negative formal dimension " + std::to_string(N) + "; H^" +
                  std::to_string(*cert.witness_degree) + " != 0";
    return cert;
  }
  if (N + cert.window > max_degree) {
    cert.status = Status::Inconclusive;
    cert.reason = "window exceeds the degree cap " + std::to_string(max_degree);
    return cert;
  }
  engine.precompute(N);
  for (int i = N + 1; i <= N + cert.window; ++i) {
    if (!engine.vanishes(i)) {
      cert.status = Status::Refuted;
      cert.witness_degree = i;
      cert.reason = "H^" + std::to_string(i) + " != 0 above the formal dimension " + std::to_string(N);
      return cert;
    }
  }
  if (engine.betti(N) != 1) {
    cert.status = Status::Refuted;
    cert.witness_degree = N;
    cert.reason = "dim H^" + std::to_string(N) + " = " + std::to_string(engine.betti(N)) + ", expected 1";
    return cert;
  }
  for (int i = 0; i <= N; ++i) {
    if (!pd_pairing(engine, i).nondegenerate) {
      cert.status = Status::Refuted;
      cert.witness_degree = i;
      cert.reason = "Poincaré pairing H^" + std::to_string(i) + " x H^" + std::to_string(N - i) +
                    " is degenerate";
      return cert;
    }
  }
  cert.status = Status::Certified;
  cert.reason = "H vanishes on (" + std::to_string(N) + ", " + std::to_string(N + cert.window) +
                "] and Poincaré duality holds";
  return cert;
}

/// h[i][k] for 0 <= i <= N with n_k, N_k; requires a homogeneous model.
inline BigradedTable bigraded_profile(const Cohomology& engine) {
  if (!engine.profile().homogeneous())
    throw PreconditionError("bigraded_profile: differential is " + engine.profile().describe());
  BigradedTable t;
  const int N = formal_dimension_formula(engine.model());
  if (N < 0) throw PreconditionError("bigraded_profile: negative formal dimension");
  t.formal_dimension = N;
  const int kmax = engine.max_word_length(N);
  t.h.assign(N + 1, std::vector<std::size_t>(kmax + 1, 0));
  t.e = 0;
  for (int i = 0; i <= N; ++i) {
    for (int k = 0; k <= kmax; ++k) {
      t.h[i][k] = engine.bigraded_dimension(i, k);
      if (t.h[i][k] > 0) t.e = std::max(t.e, k);
    }
  }
  t.n.assign(t.e + 1, std::nullopt);
  t.N.assign(t.e + 1, std::nullopt);
  for (int k = 0; k <= t.e; ++k) {
    for (int i = 0; i <= N; ++i) {
      if (t.h[i][k] == 0) continue;
      if (!t.n[k]) t.n[k] = i;
      t.N[k] = i;
    }
  }
  return t;
}

}  // namespace sullivan

#pragma once

// Toomer invariant via the projections p_n : ΛV -> ΛV / Λ^{>n} V.
//
// K_n (per degree) is the kernel of p_n^* on H, held in class coordinates.
// e0 of a class is the least n with the class outside K_n; the multiplicity
// of value k is dim K_{k-1} - dim K_k, with K_{-1} = H.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/cohomology.hpp"
#include "sullivan/parallel.hpp"

namespace sullivan {

/// Truncated complex ΛV / Λ^{>n} V in one degree.
struct QuotientSlice {
  int cutoff = 0;
  int degree = 0;
  std::vector<Monomial> basis;
  std::map<Monomial, std::size_t> index;
  Subspace boundaries;

  Vector to_vector(const GradedPolynomial& p) const {
    Vector v(basis.size());
    for (const auto& [m, c] : p.terms()) {
      if (m.word_length() > cutoff) continue;
      auto it = index.find(m);
      if (it == index.end()) throw UsageError("polynomial has a term outside the quotient slice");
      v[it->second] = c;
    }
    return v;
  }
};

struct ClassValue {
  int degree = 0;
  GradedPolynomial representative;
  int e0 = 0;
};

struct ToomerReport {
  int e0_algebra = 0;
  std::optional<int> cat0;  // reported only under an ellipticity certificate
  std::vector<ClassValue> classes;
  std::vector<std::size_t> spectrum;  // multiplicity of each value k = 0..e0_algebra
  std::vector<int> gaps;
  std::size_t total_dimension = 0;
};

class Toomer {
 public:
  explicit Toomer(const Cohomology& engine) : engine_(engine) {}

  const Cohomology& engine() const noexcept { return engine_; }

  std::shared_ptr<const QuotientSlice> quotient_slice(int cutoff, int degree) const {
    const Key key{cutoff, degree};
    {
      std::lock_guard lock(mutex_);
      if (auto it = slices_.find(key); it != slices_.end()) return it->second;
    }
    auto q = std::make_shared<QuotientSlice>();
    q->cutoff = cutoff;
    q->degree = degree;
    const auto& A = engine_.algebra();
    q->basis = A.monomial_basis(degree, cutoff);
    for (std::size_t j = 0; j < q->basis.size(); ++j) q->index.emplace(q->basis[j], j);
    std::vector<Vector> bounds;
    if (degree > 0) {
      for (const auto& m : A.monomial_basis(degree - 1, cutoff)) {
        GradedPolynomial image = engine_.model().d(GradedPolynomial(m, 1)).truncated(cutoff);
        if (!image.is_zero()) bounds.push_back(q->to_vector(image));
      }
    }
    q->boundaries = Subspace(q->basis.size(), bounds);
    std::lock_guard lock(mutex_);
    return slices_.emplace(key, std::move(q)).first->second;
  }

  /// Whether p_n^*[z] != 0 for a cocycle z of the given degree.
  bool survives(int cutoff, const GradedPolynomial& cocycle, int degree) const {
    auto q = quotient_slice(cutoff, degree);
    return !q->boundaries.contains(q->to_vector(cocycle));
  }

  /// K_n in degree i, in coordinates of the class basis of H^i.
  Subspace kernel(int cutoff, int degree) const {
    auto g = engine_.group(degree);
    const std::size_t b = g->dimension();
    if (b == 0) return Subspace(0);
    auto q = quotient_slice(cutoff, degree);
    std::vector<Vector> residues;
    for (std::size_t j = 0; j < b; ++j) residues.push_back(q->boundaries.reduce(q->to_vector(g->representative(j))));
    if (q->basis.empty()) return Subspace(b, identity_rows(b));
    return Subspace(b, kernel_basis(RatMatrix::from_columns(residues, q->basis.size())));
  }

  /// Cutoff beyond which K_n vanishes in this degree for trivial reasons.
  int trivial_cutoff(int degree) const {
    int best = 0;
    for (int i : {degree - 1, degree}) {
      if (i < 0) continue;
      for (const auto& m : engine_.slice(i)->basis) best = std::max(best, m.word_length());
    }
    return best;
  }

  /// dim K_n for n = 0, 1, ... ending at the first zero.
  std::vector<std::size_t> kernel_dimensions(int degree) const {
    std::vector<std::size_t> dims;
    const int stop = trivial_cutoff(degree);
    for (int n = 0;; ++n) {
      std::size_t d = n >= stop ? 0 : kernel(n, degree).dimension();
      dims.push_back(d);
      if (d == 0) break;
    }
    return dims;
  }

  /// Least n with K_n = 0 in this degree.
  int degree_e0(int degree) const { return static_cast<int>(kernel_dimensions(degree).size()) - 1; }

  int toomer_of_class(const CohomologyClass& x) const {
    auto g = engine_.group(x.degree);
    auto coords = g->try_coordinates(x.representative);
    if (!coords || !engine_.model().d(x.representative).is_zero())
      throw UsageError("toomer_of_class: representative is not a cocycle of degree " + std::to_string(x.degree));
    if (is_zero(*coords)) throw UsageError("toomer_of_class: e0 is undefined for the zero class");
    const int stop = trivial_cutoff(x.degree);
    for (int n = 0; n < stop; ++n)
      if (survives(n, x.representative, x.degree)) return n;
    return stop;
  }

  /// max over degrees i <= N of the least n with K_n^i = 0.
  int toomer_of_algebra() const {
    const int N = formal_dimension_formula(engine_.model());
    if (N < 0) throw PreconditionError("toomer_of_algebra: negative formal dimension");
    std::vector<int> per(N + 1, 0);
    parallel_for(static_cast<std::size_t>(N + 1), [&](std::size_t i) { per[i] = degree_e0(static_cast<int>(i)); });
    return *std::max_element(per.begin(), per.end());
  }

  int toomer_via_fundamental_class() const { return toomer_of_class(fundamental_class(engine_)); }

  ToomerReport e0_spectrum(bool certified) const {
    ToomerReport r;
    const int N = formal_dimension_formula(engine_.model());
    if (N < 0) throw PreconditionError("e0_spectrum: negative formal dimension");
    std::vector<std::vector<std::size_t>> dims(N + 1);
    parallel_for(static_cast<std::size_t>(N + 1), [&](std::size_t i) { dims[i] = kernel_dimensions(static_cast<int>(i)); });
    for (int i = 0; i <= N; ++i) {
      r.e0_algebra = std::max(r.e0_algebra, static_cast<int>(dims[i].size()) - 1);
      r.total_dimension += engine_.betti(i);
    }
    r.spectrum.assign(r.e0_algebra + 1, 0);
    for (int i = 0; i <= N; ++i) {
      std::size_t previous = engine_.betti(i);
      for (std::size_t n = 0; n < dims[i].size(); ++n) {
        r.spectrum[n] += previous - dims[i][n];
        previous = dims[i][n];
      }
    }
    for (int k = 1; k <= r.e0_algebra; ++k)
      if (r.spectrum[k] == 0) r.gaps.push_back(k);
    for (int i = 0; i <= N; ++i) {
      auto g = engine_.group(i);
      for (std::size_t j = 0; j < g->dimension(); ++j) {
        CohomologyClass x{i, g->representative(j), std::nullopt};
        r.classes.push_back({i, x.representative, toomer_of_class(x)});
      }
    }
    if (certified) r.cat0 = r.e0_algebra;
    return r;
  }

 private:
  using Key = std::pair<int, int>;

  static std::vector<Vector> identity_rows(std::size_t n) {
    std::vector<Vector> rows(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return rows;
  }

  const Cohomology& engine_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::shared_ptr<const QuotientSlice>> slices_;
};

struct CorpusEntry {
  SullivanModel model;
  std::string origin;
  std::optional<std::uint64_t> seed;
};

struct GapScanRecord {
  CorpusEntry entry;
  EllipticityCertificate certificate;
  std::optional<ToomerReport> report;

  bool has_gaps() const { return report && !report->gaps.empty(); }
};

/// Full e0 spectrum for every model; models that fail certification are kept
/// with their refutation and no spectrum. Output order follows the input.
inline std::vector<GapScanRecord> gap_scan(const std::vector<CorpusEntry>& corpus,
                                           std::size_t workers = worker_count()) {
  std::vector<GapScanRecord> out(corpus.size());
  parallel_for(
      corpus.size(),
      [&](std::size_t i) {
        Cohomology engine(corpus[i].model);
        GapScanRecord rec{corpus[i], certify_elliptic(engine), std::nullopt};
        if (rec.certificate.certified()) rec.report = Toomer(engine).e0_spectrum(true);
        out[i] = std::move(rec);
      },
      workers);
  return out;
}

}  // namespace sullivan

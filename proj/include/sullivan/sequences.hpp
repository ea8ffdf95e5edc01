#pragma once

// Wang (odd x1) and Gysin (even x1) long exact sequences obtained by
// stripping the first generator, in bigraded or plain form.
//
// Nodes come in three families along the sequence
//
//     A --j*--> B --p*--> C --δ--> A ...
//
// with B = H(ΛV), C = H(ΛW), and A = H(ΛW) for Wang, H(ΛV) for Gysin.
// For s = |x1| the (degree, length) shifts are j*: (s, 1), p*: (0, 0) and
// δ: (1 - s, l - 2), where δ is θ* (Wang) or ∂* (Gysin).

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/cohomology.hpp"
#include "sullivan/model.hpp"

namespace sullivan {

enum class SequenceKind { Wang, Gysin };

inline std::string to_string(SequenceKind k) { return k == SequenceKind::Wang ? "wang" : "gysin"; }

enum class NodeFamily { A, B, C };

struct NodeKey {
  NodeFamily family = NodeFamily::B;
  int degree = 0;
  std::optional<int> length;

  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeFailure {
  std::string node;
  std::string reason;
  Vector witness;
};

struct IsoCheck {
  std::string description;
  bool holds = true;
};

struct LesReport {
  SequenceKind kind = SequenceKind::Wang;
  bool graded = true;
  int first_degree = 0;
  int window_degree = 0;
  int window_length = 0;
  std::size_t nodes_checked = 0;
  std::size_t nonzero_nodes = 0;
  std::vector<NodeFailure> failures;
  std::vector<IsoCheck> isomorphisms;
  std::vector<IsoCheck> short_exact;
  std::optional<bool> formal_dimension_relation;
  int N = 0;
  int M = 0;

  bool exact() const noexcept { return failures.empty(); }
  bool all_pass() const {
    for (const auto& c : isomorphisms)
      if (!c.holds) return false;
    for (const auto& c : short_exact)
      if (!c.holds) return false;
    return exact() && formal_dimension_relation.value_or(true);
  }
};

/// Top nonzero degree among 0..limit, or -1.
inline int computed_formal_dimension(const Cohomology& engine, int limit) {
  int top = -1;
  for (int i = 0; i <= limit; ++i)
    if (!engine.vanishes(i)) top = i;
  return top;
}

/// θ with the sign of its last nonzero generator value flipped, extended as a
/// derivation. Used as a negative control for the exactness checks.
inline Derivation corrupt_theta(Derivation theta) {
  for (std::size_t i = theta.values.size(); i-- > 0;) {
    if (!theta.values[i].is_zero()) {
      theta.values[i] *= Rational(-1);
      break;
    }
  }
  return theta;
}

class LongExactSequence {
 public:
  /// graded = false forgets word length (needed for non-homogeneous models).
  /// theta_override replaces the Wang derivation (negative controls only).
  LongExactSequence(const SullivanModel& model, SequenceKind kind, bool graded = true,
                    std::optional<Derivation> theta_override = std::nullopt)
      : kind_(kind),
        graded_(graded),
        V_(std::make_unique<Cohomology>(model)),
        W_(std::make_unique<Cohomology>(quotient_model(V_->model()))) {
    const auto& x1 = V_->model().generators()[0];
    if (kind == SequenceKind::Wang && !x1.odd())
      throw PreconditionError("Wang sequence needs an odd first generator, " + x1.name + " has degree " +
                              std::to_string(x1.degree));
    if (kind == SequenceKind::Gysin && x1.odd())
      throw PreconditionError("Gysin sequence needs an even first generator, " + x1.name + " has degree " +
                              std::to_string(x1.degree));
    if (graded && !V_->profile().homogeneous())
      throw PreconditionError("bigraded sequence needs a homogeneous differential; model is " +
                              V_->profile().describe());
    s_ = x1.degree;
    l_ = V_->profile().formula_length();
    if (kind == SequenceKind::Wang) theta_ = theta_override ? *theta_override : wang_derivation(V_->model());
  }

  SequenceKind kind() const noexcept { return kind_; }
  bool graded() const noexcept { return graded_; }
  const Cohomology& total() const noexcept { return *V_; }
  const Cohomology& quotient() const noexcept { return *W_; }
  int first_degree() const noexcept { return s_; }
  int length() const noexcept { return l_; }

  std::shared_ptr<const CohomologyGroup> group(const NodeKey& key) const {
    const Cohomology& e = engine_for(key.family);
    if (key.degree < 0 || (key.length && *key.length < 0)) return nullptr;
    return key.length ? e.bigraded_group(key.degree, *key.length) : e.group(key.degree);
  }

  std::size_t dimension(const NodeKey& key) const {
    auto g = group(key);
    return g ? g->dimension() : 0;
  }

  NodeKey next(const NodeKey& key) const {
    switch (key.family) {
      case NodeFamily::A: return {NodeFamily::B, key.degree + s_, shift(key.length, 1)};
      case NodeFamily::B: return {NodeFamily::C, key.degree, key.length};
      case NodeFamily::C: return {NodeFamily::A, key.degree + 1 - s_, shift(key.length, l_ - 2)};
    }
    return key;
  }

  NodeKey previous(const NodeKey& key) const {
    switch (key.family) {
      case NodeFamily::A: return {NodeFamily::C, key.degree - 1 + s_, shift(key.length, -(l_ - 2))};
      case NodeFamily::B: return {NodeFamily::A, key.degree - s_, shift(key.length, -1)};
      case NodeFamily::C: return {NodeFamily::B, key.degree, key.length};
    }
    return key;
  }

  /// Image of one cochain under the chain-level map leaving `family`.
  GradedPolynomial map_element(NodeFamily family, const GradedPolynomial& chi, int degree) const {
    const auto& A = V_->algebra();
    switch (family) {
      case NodeFamily::A: {
        const GradedPolynomial x1 = GradedPolynomial::generator(A.size(), 0);
        if (kind_ == SequenceKind::Wang) {
          GradedPolynomial out = A.multiply(x1, lift_from_quotient(chi));
          if (degree % 2 != 0) out *= Rational(-1);
          return out;
        }
        return A.multiply(x1, chi);
      }
      case NodeFamily::B: return project_to_quotient(chi);
      case NodeFamily::C: {
        if (kind_ == SequenceKind::Wang) return W_->algebra().apply(*theta_, chi);
        GradedPolynomial dchi = V_->model().d(lift_from_quotient(chi));
        return divide_by_first(A, dchi);
      }
    }
    return {};
  }

  /// Matrix of the map leaving `from`, columns indexed by from's class basis.
  RatMatrix map_matrix(const NodeKey& from) const {
    const NodeKey to = next(from);
    auto src = group(from);
    auto dst = group(to);
    const std::size_t rows = dst ? dst->dimension() : 0;
    const std::size_t cols = src ? src->dimension() : 0;
    RatMatrix m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      GradedPolynomial image = map_element(from.family, src->representative(j), from.degree);
      if (image.is_zero()) continue;
      if (!dst) throw InternalError("map leaves the sequence's index range at " + label(from));
      const Cohomology& target_engine = engine_for(to.family);
      if (!dst->slice.contains(image))
        throw InternalError("image from " + label(from) + " lies outside " + label(to));
      if (!target_engine.model().d(image).is_zero())
        throw InternalError("image from " + label(from) + " is not a cocycle");
      Vector c = dst->coordinates(image);
      for (std::size_t r = 0; r < rows; ++r)
        if (sgn(c[r]) != 0) m.set(r, j, c[r]);
    }
    return m;
  }

  std::string label(const NodeKey& key) const {
    std::string space = key.family == NodeFamily::B ? "ΛV"
                        : key.family == NodeFamily::C ? "ΛW"
                        : (kind_ == SequenceKind::Wang ? "ΛW" : "ΛV");
    std::string fam = key.family == NodeFamily::A ? "A" : key.family == NodeFamily::B ? "B" : "C";
    return fam + ":H^" + std::to_string(key.degree) + (key.length ? "_" + std::to_string(*key.length) : "") +
           "(" + space + ")";
  }

  /// Exactness at one node; nullopt when exact.
  std::optional<NodeFailure> check_node(const NodeKey& key) const {
    const std::size_t dim = dimension(key);
    if (dim == 0) return std::nullopt;
    const NodeKey prev = previous(key);
    RatMatrix in = map_matrix(prev);
    RatMatrix out = map_matrix(key);
    if (in.cols() > 0 && out.rows() > 0) {
      RatMatrix composite = out.multiply(in);
      for (std::size_t j = 0; j < composite.cols(); ++j) {
        Vector col = composite.column(j);
        if (!is_zero(col)) return NodeFailure{label(key), "composite of incoming and outgoing maps is nonzero",
                                              in.column(j)};
      }
    }
    const std::size_t rank_in = in.cols() == 0 ? 0 : rank(in);
    const std::size_t ker_out = dim - (out.rows() == 0 ? 0 : rank(out));
    if (rank_in != ker_out) {
      Subspace image(dim, in.cols() == 0 ? std::vector<Vector>{} : transpose_columns(in));
      auto kernel = out.rows() == 0 ? identity(dim) : kernel_basis(out);
      for (auto& v : kernel)
        if (!image.contains(v))
          return NodeFailure{label(key), "kernel of outgoing map exceeds image of incoming map", v};
      return NodeFailure{label(key), "rank mismatch", {}};
    }
    return std::nullopt;
  }

  LesReport check_exactness() const { return check_exactness(default_window_degree(), default_window_length()); }

  /// Exactness at every node with degree <= max_degree and length <= max_length.
  LesReport check_exactness(int max_degree, int max_length) const {
    LesReport rep;
    rep.kind = kind_;
    rep.graded = graded_;
    rep.first_degree = s_;
    rep.window_degree = max_degree;
    rep.window_length = graded_ ? max_length : 0;
    for (NodeFamily f : {NodeFamily::A, NodeFamily::B, NodeFamily::C}) {
      for (int i = 0; i <= max_degree; ++i) {
        for (int k = 0; k <= (graded_ ? max_length : 0); ++k) {
          NodeKey key{f, i, graded_ ? std::optional<int>(k) : std::nullopt};
          ++rep.nodes_checked;
          if (dimension(key) > 0) ++rep.nonzero_nodes;
          if (auto failure = check_node(key)) rep.failures.push_back(std::move(*failure));
        }
      }
    }
    rep.N = computed_formal_dimension(*V_, formal_dimension_formula(V_->model()) + s_ + 1);
    rep.M = computed_formal_dimension(*W_, formal_dimension_formula(W_->model()) + s_ + 1);
    rep.formal_dimension_relation = formal_dimension_relation();
    add_isomorphism_checks(rep, max_length);
    if (kind_ == SequenceKind::Wang) add_short_exact_checks(rep, max_degree, max_length);
    return rep;
  }

  /// N = M + s for odd x1, N = M - s + 1 for even x1 (computed dimensions).
  bool formal_dimension_relation() const {
    const int N = computed_formal_dimension(*V_, formal_dimension_formula(V_->model()) + s_ + 1);
    const int M = computed_formal_dimension(*W_, formal_dimension_formula(W_->model()) + s_ + 1);
    return kind_ == SequenceKind::Wang ? N == M + s_ : N == M - s_ + 1;
  }

  int default_window_degree() const { return formal_dimension_formula(V_->model()) + s_ + 1; }
  int default_window_length() const { return V_->max_word_length(std::max(default_window_degree(), 0)); }

 private:
  static std::optional<int> shift(std::optional<int> k, int by) {
    if (!k) return std::nullopt;
    return *k + by;
  }

  static std::vector<Vector> transpose_columns(const RatMatrix& m) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
    return cols;
  }

  static std::vector<Vector> identity(std::size_t n) {
    std::vector<Vector> rows(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
    return rows;
  }

  const Cohomology& engine_for(NodeFamily f) const {
    if (f == NodeFamily::B) return *V_;
    if (f == NodeFamily::C) return *W_;
    return kind_ == SequenceKind::Wang ? *W_ : *V_;
  }

  static bool invertible(const RatMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

  // Wang: j*: H^M_k(ΛW) -> H^{M+s}_{k+1}(ΛV). Gysin: ∂*: H^M_k(ΛW) -> H^{M-s+1}_{k+l-2}(ΛV).
  void add_isomorphism_checks(LesReport& rep, int max_length) const {
    const int M = rep.M;
    if (M < 0) return;
    const int kmax = graded_ ? max_length : 0;
    for (int k = 0; k <= kmax; ++k) {
      std::optional<int> len = graded_ ? std::optional<int>(k) : std::nullopt;
      NodeKey from = kind_ == SequenceKind::Wang ? NodeKey{NodeFamily::A, M, len} : NodeKey{NodeFamily::C, M, len};
      if (dimension(from) == 0 && dimension(next(from)) == 0) continue;
      IsoCheck c;
      c.description = (kind_ == SequenceKind::Wang ? "j*: " : "∂*: ") + label(from) + " -> " + label(next(from));
      c.holds = invertible(map_matrix(from));
      rep.isomorphisms.push_back(std::move(c));
    }
  }

  // dim B(i,k) = dim coker(δ into A(i-s, k-1)) + dim ker(δ out of C(i,k)).
  void add_short_exact_checks(LesReport& rep, int max_degree, int max_length) const {
    for (int i = 0; i <= max_degree; ++i) {
      for (int k = 0; k <= (graded_ ? max_length : 0); ++k) {
        std::optional<int> len = graded_ ? std::optional<int>(k) : std::nullopt;
        NodeKey b{NodeFamily::B, i, len};
        NodeKey a = previous(b);
        NodeKey c = next(b);
        const std::size_t dim_a = dimension(a);
        const std::size_t dim_c = dimension(c);
        const std::size_t dim_b = dimension(b);
        if (dim_a == 0 && dim_b == 0 && dim_c == 0) continue;
        RatMatrix into_a = map_matrix(previous(a));
        RatMatrix out_c = map_matrix(c);
        const std::size_t coker = dim_a - (into_a.cols() == 0 || into_a.rows() == 0 ? 0 : rank(into_a));
        const std::size_t ker = dim_c - (out_c.rows() == 0 || out_c.cols() == 0 ? 0 : rank(out_c));
        IsoCheck chk;
        chk.description = "dim " + label(b) + " = dim coker(θ*) + dim ker(θ*)";
        chk.holds = dim_b == coker + ker;
        rep.short_exact.push_back(std::move(chk));
      }
    }
  }

  SequenceKind kind_;
  bool graded_;
  std::unique_ptr<Cohomology> V_;
  std::unique_ptr<Cohomology> W_;
  std::optional<Derivation> theta_;
  int s_ = 0;
  int l_ = 2;
};

inline LongExactSequence build_wang(const SullivanModel& model, bool graded = true) {
  return LongExactSequence(model, SequenceKind::Wang, graded);
}

inline LongExactSequence build_gysin(const SullivanModel& model, bool graded = true) {
  return LongExactSequence(model, SequenceKind::Gysin, graded);
}

/// The sequence matching the parity of the first generator.
inline LongExactSequence build_sequence(const SullivanModel& model, bool graded = true) {
  if (model.size() == 0) throw PreconditionError("model has no generators");
  return model.generators()[0].odd() ? build_wang(model, graded) : build_gysin(model, graded);
}

}  // namespace sullivan

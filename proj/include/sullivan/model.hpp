#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/algebra.hpp"
#include "sullivan/errors.hpp"

namespace sullivan {

/// A minimal Sullivan algebra (ΛV, d) presented by an ordered generator list
/// and the values of d on the generators.
class SullivanModel {
 public:
  SullivanModel() = default;
  SullivanModel(std::vector<Generator> generators, std::vector<GradedPolynomial> differential,
                bool simply_connected = true, std::string name = {})
      : algebra_(std::move(generators)),
        differential_(std::move(differential)),
        simply_connected_(simply_connected),
        name_(std::move(name)) {
    if (differential_.size() != algebra_.size())
      throw UsageError("differential has " + std::to_string(differential_.size()) + " values for " +
                       std::to_string(algebra_.size()) + " generators");
  }

  const GradedAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Generator>& generators() const noexcept { return algebra_.generators(); }
  std::size_t size() const noexcept { return algebra_.size(); }
  const std::vector<GradedPolynomial>& differential() const noexcept { return differential_; }
  const GradedPolynomial& d(std::size_t generator) const { return differential_.at(generator); }
  bool simply_connected() const noexcept { return simply_connected_; }
  bool validated() const noexcept { return validated_; }
  const std::string& name() const noexcept { return name_; }

  void set_name(std::string name) { name_ = std::move(name); }

  Derivation derivation() const { return {1, differential_}; }

  GradedPolynomial d(const GradedPolynomial& p) const { return algebra_.apply(derivation(), p); }

  GradedPolynomial generator(std::size_t index) const {
    return GradedPolynomial::generator(size(), index);
  }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (generators()[i].name == name) return i;
    return std::nullopt;
  }

  int count_odd() const {
    return static_cast<int>(std::count_if(generators().begin(), generators().end(),
                                          [](const Generator& g) { return g.odd(); }));
  }
  int count_even() const { return static_cast<int>(size()) - count_odd(); }

  int min_generator_degree() const {
    int p = 0;
    for (const auto& g : generators()) p = p == 0 ? g.degree : std::min(p, g.degree);
    return p;
  }

  int max_generator_degree() const {
    int p = 0;
    for (const auto& g : generators()) p = std::max(p, g.degree);
    return p;
  }

  /// Same generators, differential and flag; names and validation state aside.
  friend bool operator==(const SullivanModel& a, const SullivanModel& b) {
    return a.generators() == b.generators() && a.differential_ == b.differential_ &&
           a.simply_connected_ == b.simply_connected_;
  }

 private:
  friend SullivanModel validate(const SullivanModel&);

  GradedAlgebra algebra_;
  std::vector<GradedPolynomial> differential_;
  bool simply_connected_ = true;
  bool validated_ = false;
  std::string name_;
};

/// Every violated condition, in generator order. Structural conditions
/// (degree, decomposability, triangularity) come first; d^2 = 0 is only
/// checked once the structure is sound. A linear term counts against
/// decomposability only, never additionally against triangularity.
inline std::vector<Violation> find_violations(const SullivanModel& model) {
  std::vector<Violation> out;
  const auto& A = model.algebra();
  const auto& gens = model.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.degree < 1) out.push_back({g.name, "degree", "generator degree must be positive"});
    else if (model.simply_connected() && g.degree < 2)
      out.push_back({g.name, "degree", "degree-1 generator requires the non-simply-connected flag"});
    for (std::size_t j = 0; j < i; ++j)
      if (gens[j].name == g.name) out.push_back({g.name, "name", "duplicate generator name"});
  }
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    bool bad_degree = false;
    bool linear = false;
    bool forward = false;
    for (const auto& [m, c] : model.d(i).terms()) {
      if (!A.is_valid(m)) {
        out.push_back({g.name, "monomial", "differential contains a malformed monomial"});
        return out;
      }
      if (A.degree(m) != g.degree + 1) bad_degree = true;
      if (m.word_length() < 2) {
        linear = true;
        continue;
      }
      for (std::size_t j = i; j < gens.size(); ++j)
        if (m.exponents[j] > 0) forward = true;
    }
    if (bad_degree)
      out.push_back({g.name, "degree shift", "d(" + g.name + ") is not of degree " +
                                                 std::to_string(g.degree + 1)});
    if (linear)
      out.push_back({g.name, "decomposable", "d(" + g.name + ") has a term of word length < 2"});
    if (forward)
      out.push_back({g.name, "triangular",
                     "d(" + g.name + ") involves " + g.name + " or a later generator"});
  }
  if (!out.empty()) return out;

  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!model.d(model.d(i)).is_zero())
      out.push_back({gens[i].name, "d squared", "d(d(" + gens[i].name + ")) != 0"});
  return out;
}

inline SullivanModel validate(const SullivanModel& model) {
  auto violations = find_violations(model);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  SullivanModel out = model;
  out.validated_ = true;
  return out;
}

/// Word-length shape of the differential.
struct LengthProfile {
  enum class Kind { Zero, Homogeneous, BoundedBelow };

  Kind kind = Kind::Zero;
  int l = 0;  // 0 for the zero differential, which is homogeneous of every length

  bool homogeneous() const noexcept { return kind != Kind::BoundedBelow; }
  bool compatible_with(int length) const noexcept {
    return kind == Kind::Zero || (kind == Kind::Homogeneous && l == length);
  }
  /// The l used in length formulas; the zero differential reads as coformal.
  int formula_length() const noexcept { return kind == Kind::Zero ? 2 : l; }

  std::string describe() const {
    switch (kind) {
      case Kind::Zero: return "zero";
      case Kind::Homogeneous: return "homogeneous(" + std::to_string(l) + ")";
      case Kind::BoundedBelow: return "mixed (bounded_below(" + std::to_string(l) + "))";
    }
    return {};
  }

  friend bool operator==(const LengthProfile&, const LengthProfile&) = default;
};

inline LengthProfile length_profile(const SullivanModel& model) {
  int lo = 0;
  int hi = 0;
  for (const auto& dv : model.differential()) {
    auto range = dv.length_range();
    if (!range) continue;
    lo = lo == 0 ? range->first : std::min(lo, range->first);
    hi = std::max(hi, range->second);
  }
  if (hi == 0) return {LengthProfile::Kind::Zero, 0};
  if (lo == hi) return {LengthProfile::Kind::Homogeneous, lo};
  return {LengthProfile::Kind::BoundedBelow, lo};
}

// Moving polynomials between ΛV = Λ(x1, W) and ΛW.

/// View an element of ΛW as an element of ΛV (x1 exponent zero).
inline GradedPolynomial lift_from_quotient(const GradedPolynomial& p) {
  GradedPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    Monomial lifted(m.exponents.size() + 1);
    std::copy(m.exponents.begin(), m.exponents.end(), lifted.exponents.begin() + 1);
    out.add_term(lifted, c);
  }
  return out;
}

/// The projection ΛV -> ΛW killing the ideal generated by x1.
inline GradedPolynomial project_to_quotient(const GradedPolynomial& p) {
  GradedPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    if (m.exponents.empty()) throw UsageError("cannot project from an algebra without generators");
    if (m.exponents[0] != 0) continue;
    out.add_term(Monomial(std::vector<int>(m.exponents.begin() + 1, m.exponents.end())), c);
  }
  return out;
}

/// Writes p = x1 * q with x1 placed on the left; returns q (in ΛV).
/// Throws InternalError if some term of p is free of x1.
inline GradedPolynomial divide_by_first(const GradedAlgebra& A, const GradedPolynomial& p) {
  GradedPolynomial out;
  const Monomial x1 = Monomial::unit(A.size(), 0);
  for (const auto& [m, c] : p.terms()) {
    if (m.exponents.at(0) == 0)
      throw InternalError("term is not divisible by the first generator");
    Monomial q = m;
    q.exponents[0] -= 1;
    // x1 has index 0, so x1 * q is already canonical with sign +1.
    if (A.koszul_sign(x1, q) != 1) throw InternalError("unexpected sign dividing by x1");
    out.add_term(q, c);
  }
  return out;
}

/// ΛW = ΛV / (x1), with every x1-containing term of d deleted.
inline SullivanModel quotient_model(const SullivanModel& model, std::size_t generator = 0) {
  if (model.size() == 0) throw PreconditionError("quotient_model: model has no generators");
  if (generator != 0)
    throw PreconditionError("quotient_model: can only strip the first generator, got " +
                            model.generators().at(generator).name);
  if (!model.d(0).is_zero())
    throw PreconditionError("quotient_model: d(" + model.generators()[0].name + ") != 0");
  std::vector<Generator> gens(model.generators().begin() + 1, model.generators().end());
  std::vector<GradedPolynomial> diff;
  for (std::size_t i = 1; i < model.size(); ++i) diff.push_back(project_to_quotient(model.d(i)));
  std::string name = model.name().empty() ? std::string{} : model.name() + "/" + model.generators()[0].name;
  return validate(SullivanModel(std::move(gens), std::move(diff), model.simply_connected(), name));
}

/// For odd x1 write d(χ) = d̄(χ) + x1 θ(χ) on ΛW, with x1 on the left and no
/// further sign. θ is a derivation of degree 1 - |x1| commuting with d̄.
inline Derivation wang_derivation(const SullivanModel& model, std::size_t generator = 0) {
  if (model.size() == 0) throw PreconditionError("wang_derivation: model has no generators");
  if (generator != 0) throw PreconditionError("wang_derivation: x1 must be the first generator");
  const Generator& x1 = model.generators()[0];
  if (!x1.odd()) throw PreconditionError("wang_derivation: " + x1.name + " has even degree");
  if (!model.d(0).is_zero()) throw PreconditionError("wang_derivation: d(" + x1.name + ") != 0");
  Derivation theta{1 - x1.degree, {}};
  for (std::size_t i = 1; i < model.size(); ++i) {
    GradedPolynomial with_x1;
    for (const auto& [m, c] : model.d(i).terms())
      if (m.exponents[0] > 0) with_x1.add_term(m, c);
    theta.values.push_back(project_to_quotient(divide_by_first(model.algebra(), with_x1)));
  }
  return theta;
}

}  // namespace sullivan

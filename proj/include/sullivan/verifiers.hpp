#pragma once

// Theorem-level checks. Each returns pass, fail (with a concrete witness) or
// not-applicable (naming the missing hypothesis).

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sullivan/cohomology.hpp"
#include "sullivan/parallel.hpp"
#include "sullivan/parser.hpp"
#include "sullivan/toomer.hpp"

namespace sullivan {

using json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, NotApplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return {};
}

struct VerificationReport {
  std::string theorem;
  std::string model;
  Verdict verdict = Verdict::NotApplicable;
  std::string reason;
  json witnesses = json::array();
  json derived = json::object();
};

inline json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

inline json optional_json(const std::vector<std::optional<int>>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(x ? json(*x) : json(nullptr));
  return out;
}

/// Per-model results shared between the checks, computed on first use.
class Analysis {
 public:
  explicit Analysis(const SullivanModel& model)
      : engine_(std::make_unique<Cohomology>(model)), toomer_(*engine_) {}

  const Cohomology& engine() const noexcept { return *engine_; }
  const SullivanModel& model() const noexcept { return engine_->model(); }
  const LengthProfile& profile() const noexcept { return engine_->profile(); }
  const Toomer& toomer_engine() const noexcept { return toomer_; }
  std::string id() const { return model().name().empty() ? "<unnamed>" : model().name(); }

  const EllipticityCertificate& certificate() const {
    if (!certificate_) certificate_ = certify_elliptic(*engine_);
    return *certificate_;
  }

  bool certified() const { return certificate().certified(); }

  const ToomerReport& toomer() const {
    if (!toomer_report_) {
      if (!certified()) throw PreconditionError("model is not certified elliptic: " + certificate().reason);
      toomer_report_ = toomer_.e0_spectrum(true);
    }
    return *toomer_report_;
  }

  const BigradedTable& bigraded() const {
    if (!bigraded_) bigraded_ = bigraded_profile(*engine_);
    return *bigraded_;
  }

  /// dim V^odd + (l - 2) dim V^even, using the profile's formula length.
  int formula_e() const {
    return model().count_odd() + (profile().formula_length() - 2) * model().count_even();
  }

  int p() const { return model().min_generator_degree(); }

 private:
  std::unique_ptr<Cohomology> engine_;
  Toomer toomer_;
  mutable std::optional<EllipticityCertificate> certificate_;
  mutable std::optional<ToomerReport> toomer_report_;
  mutable std::optional<BigradedTable> bigraded_;
};

namespace detail {

inline VerificationReport start(const std::string& theorem, const Analysis& a) {
  VerificationReport r;
  r.theorem = theorem;
  r.model = a.id();
  return r;
}

inline VerificationReport not_applicable(VerificationReport r, std::string reason) {
  r.verdict = Verdict::NotApplicable;
  r.reason = std::move(reason);
  return r;
}

inline VerificationReport fail(VerificationReport r, std::string reason, json witness) {
  r.verdict = Verdict::Fail;
  r.reason = std::move(reason);
  r.witnesses.push_back(std::move(witness));
  return r;
}

/// nullopt when the homogeneous, certified hypotheses hold.
inline std::optional<std::string> missing_homogeneous_elliptic(const Analysis& a) {
  if (!a.profile().homogeneous()) return "differential is " + a.profile().describe() + ", not homogeneous";
  if (!a.certified()) return "not certified elliptic: " + a.certificate().reason;
  return std::nullopt;
}

inline json spectrum_json(const ToomerReport& t) {
  json out = json::array();
  for (auto m : t.spectrum) out.push_back(m);
  return out;
}

inline void add_bigraded(json& derived, const BigradedTable& t) {
  derived["n"] = optional_json(t.n);
  derived["N"] = optional_json(t.N);
  json lengths = json::array();
  for (int k = 0; k <= t.e; ++k) lengths.push_back(t.length_total(k));
  derived["length_dimensions"] = lengths;
}

struct LemmaConditions {
  bool a = true;
  std::optional<int> a_witness;  // first k where (a) fails
  bool b = true;
  std::optional<int> b_witness;
};

inline LemmaConditions lemma_conditions(const BigradedTable& t, int p) {
  LemmaConditions c;
  const int e = t.e;
  auto n = [&](int k) { return t.n[k].value_or(-1); };
  auto N = [&](int k) { return t.N[k].value_or(-1); };
  if (e >= 1 && n(1) != p) {
    c.a = false;
    c.a_witness = 1;
  }
  for (int k = 1; c.a && k <= e - 1; ++k) {
    if (n(k + 1) < n(k) + p) {
      c.a = false;
      c.a_witness = k;
    }
  }
  for (int k = 0; c.b && k <= e - 2; ++k) {
    if (N(k + 1) < N(k) + p) {
      c.b = false;
      c.b_witness = k;
    }
  }
  if (c.b && e >= 1 && !(N(e) == t.formal_dimension && N(e) == N(e - 1) + p)) {
    c.b = false;
    c.b_witness = e;
  }
  return c;
}

/// A nonzero combination of odd generators (of one degree) killed by d.
inline std::optional<std::pair<int, Vector>> odd_cocycle_combination(const Analysis& a) {
  const auto& gens = a.model().generators();
  std::vector<int> degrees;
  for (const auto& g : gens)
    if (g.odd() && std::find(degrees.begin(), degrees.end(), g.degree) == degrees.end()) degrees.push_back(g.degree);
  std::sort(degrees.begin(), degrees.end());
  for (int q : degrees) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].degree == q) members.push_back(i);
    auto target = a.engine().slice(q + 1);
    std::vector<Vector> cols;
    for (auto i : members) cols.push_back(target->to_vector(a.model().d(i)));
    auto ker = kernel_basis(RatMatrix::from_columns(cols, target->size()));
    if (!ker.empty()) {
      Vector full(gens.size());
      for (std::size_t j = 0; j < members.size(); ++j) full[members[j]] = ker[0][j];
      return std::pair{q, full};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline VerificationReport verify_theorem2(const Analysis& a) {
  auto r = detail::start("theorem2", a);
  if (auto missing = detail::missing_homogeneous_elliptic(a)) return detail::not_applicable(r, *missing);
  const int e = a.formula_e();
  const auto& t = a.toomer();
  const auto& bg = a.bigraded();
  const int p = a.p();
  r.derived["e"] = e;
  r.derived["l"] = a.profile().formula_length();
  r.derived["p"] = p;
  r.derived["e0"] = t.e0_algebra;
  r.derived["mu"] = detail::spectrum_json(t);
  detail::add_bigraded(r.derived, bg);

  if (t.e0_algebra != e)
    return detail::fail(r, "(A) e0 differs from dim V^odd + (l-2) dim V^even",
                        {{"part", "A"}, {"e0", t.e0_algebra}, {"formula", e}});
  if (bg.e != e)
    return detail::fail(r, "(A) top word length of cohomology differs from e", {{"part", "A"}, {"top_length", bg.e}});
  for (int k = 0; k <= e; ++k) {
    if (t.spectrum[k] == 0 || bg.length_total(k) == 0)
      return detail::fail(r, "(B) no class of Toomer invariant " + std::to_string(k),
                          {{"part", "B"}, {"k", k}, {"mu", t.spectrum[k]}, {"dim_H_k", bg.length_total(k)}});
  }
  auto c = detail::lemma_conditions(bg, p);
  r.derived["condition_a"] = c.a;
  r.derived["condition_b"] = c.b;
  if (!c.a) return detail::fail(r, "(C) condition (a) fails", {{"part", "C(a)"}, {"k", *c.a_witness}});
  if (!c.b) return detail::fail(r, "(C) condition (b) fails", {{"part", "C(b)"}, {"k", *c.b_witness}});
  r.verdict = Verdict::Pass;
  r.reason = "e0 = " + std::to_string(e) + ", no gaps, connectivity conditions hold with p = " + std::to_string(p);
  return r;
}

inline VerificationReport verify_lemma1(const Analysis& a) {
  auto r = detail::start("lemma1", a);
  if (auto missing = detail::missing_homogeneous_elliptic(a)) return detail::not_applicable(r, *missing);
  const auto& t = a.bigraded();
  const int e = t.e;
  const int N = t.formal_dimension;
  const int p = a.p();
  r.derived["e"] = e;
  r.derived["p"] = p;
  r.derived["formal_dimension"] = N;
  detail::add_bigraded(r.derived, t);
  for (int k = 1; k <= e - 1; ++k)
    if (t.length_total(k) == 0)
      return detail::not_applicable(r, "H_" + std::to_string(k) + " = 0 for a middle length");
  if (t.n[0] != 0 || t.N[0] != 0)
    return detail::fail(r, "length-0 cohomology is not Q in degree 0", {{"k", 0}});
  if (t.n[e] != N || t.N[e] != N)
    return detail::fail(r, "top-length cohomology is not concentrated in degree N", {{"k", e}});
  for (int k = 1; k <= e - 1; ++k) {
    if (*t.n[k] != N - *t.N[e - k])
      return detail::fail(r, "duality identity n_k = N - N_(e-k) fails",
                          {{"k", k}, {"n_k", *t.n[k]}, {"N_e_minus_k", *t.N[e - k]}});
  }
  auto c = detail::lemma_conditions(t, p);
  r.derived["condition_a"] = c.a;
  r.derived["condition_b"] = c.b;
  if (c.a != c.b)
    return detail::fail(r, "conditions (a) and (b) disagree",
                        {{"a", c.a}, {"b", c.b}, {"k", c.a ? *c.b_witness : *c.a_witness}});
  r.verdict = Verdict::Pass;
  r.reason = std::string("duality identity holds; (a) and (b) both ") + (c.a ? "hold" : "fail");
  return r;
}

inline VerificationReport verify_theorem3(const Analysis& a) {
  auto r = detail::start("theorem3", a);
  if (auto missing = detail::missing_homogeneous_elliptic(a)) return detail::not_applicable(r, *missing);
  const auto& t = a.toomer();
  r.derived["e0"] = t.e0_algebra;
  r.derived["mu"] = detail::spectrum_json(t);
  auto odd = detail::odd_cocycle_combination(a);
  if (!odd) return detail::not_applicable(r, "d is injective on V^odd");
  json combo = json::object();
  for (std::size_t i = 0; i < odd->second.size(); ++i)
    if (sgn(odd->second[i]) != 0) combo[a.model().generators()[i].name] = odd->second[i].get_str();
  r.derived["odd_cocycle"] = {{"degree", odd->first}, {"combination", combo}};
  for (int k = 1; k <= t.e0_algebra - 1; ++k)
    if (t.spectrum[k] < 2)
      return detail::fail(r, "fewer than two classes of Toomer invariant " + std::to_string(k),
                          {{"k", k}, {"mu", t.spectrum[k]}});
  r.verdict = Verdict::Pass;
  r.reason = "every middle Toomer value is realized at least twice";
  return r;
}

inline VerificationReport verify_corollary4(const Analysis& a) {
  auto r = detail::start("corollary4", a);
  if (auto missing = detail::missing_homogeneous_elliptic(a)) return detail::not_applicable(r, *missing);
  const auto& t = a.toomer();
  r.derived["dim_H"] = t.total_dimension;
  r.derived["e0"] = t.e0_algebra;
  r.derived["sharp"] = t.total_dimension == static_cast<std::size_t>(2 * t.e0_algebra);
  if (!detail::odd_cocycle_combination(a)) return detail::not_applicable(r, "d is injective on V^odd");
  if (t.total_dimension < static_cast<std::size_t>(2 * t.e0_algebra))
    return detail::fail(r, "dim H < 2 e0", {{"dim_H", t.total_dimension}, {"e0", t.e0_algebra}});
  r.verdict = Verdict::Pass;
  r.reason = t.total_dimension == static_cast<std::size_t>(2 * t.e0_algebra) ? "dim H = 2 e0 (sharp)" : "dim H > 2 e0";
  return r;
}

inline VerificationReport verify_remark2(const Analysis& a) {
  auto r = detail::start("remark2", a);
  if (!a.certified()) return detail::not_applicable(r, "not certified elliptic: " + a.certificate().reason);
  const int bound = a.formula_e();
  const auto& t = a.toomer();
  r.derived["profile"] = a.profile().describe();
  r.derived["l"] = a.profile().formula_length();
  r.derived["bound"] = bound;
  r.derived["e0"] = t.e0_algebra;
  if (t.e0_algebra < bound)
    return detail::fail(r, "e0 below dim V^odd + (l-2) dim V^even", {{"e0", t.e0_algebra}, {"bound", bound}});
  r.verdict = Verdict::Pass;
  r.reason = "e0 = " + std::to_string(t.e0_algebra) + " >= " + std::to_string(bound);
  return r;
}

inline VerificationReport verify_nilmanifold(const Analysis& a) {
  auto r = detail::start("nilmanifold", a);
  for (const auto& g : a.model().generators())
    if (g.degree != 1) return detail::not_applicable(r, "generator " + g.name + " is not of degree 1");
  if (!a.certified()) return detail::not_applicable(r, "not certified elliptic: " + a.certificate().reason);
  const int n = static_cast<int>(a.model().size());
  const auto& t = a.toomer();
  json betti = json::array();
  for (int i = 0; i <= n; ++i) betti.push_back(a.engine().betti(i));
  r.derived["dimension"] = n;
  r.derived["betti"] = betti;
  r.derived["dim_H"] = t.total_dimension;
  r.derived["e0"] = t.e0_algebra;
  r.derived["sharp"] = t.total_dimension == static_cast<std::size_t>(2 * n);
  for (int i = 1; i <= n - 1; ++i)
    if (a.engine().betti(i) < 2)
      return detail::fail(r, "b_" + std::to_string(i) + " < 2", {{"i", i}, {"b_i", a.engine().betti(i)}});
  if (t.total_dimension < static_cast<std::size_t>(2 * n))
    return detail::fail(r, "dim H < 2 dim", {{"dim_H", t.total_dimension}});
  if (t.e0_algebra != n) return detail::fail(r, "e0 differs from the dimension", {{"e0", t.e0_algebra}});
  for (const auto& c : t.classes)
    if (c.e0 != c.degree)
      return detail::fail(r, "a class has Toomer invariant different from its degree",
                          {{"degree", c.degree}, {"e0", c.e0}, {"class", format_polynomial(a.model().algebra(), c.representative)}});
  r.verdict = Verdict::Pass;
  r.reason = "b_i >= 2 in middle degrees, dim H >= 2 dim, e0 = dim";
  return r;
}

/// e0 of the algebra, of the fundamental class, and the largest class value
/// agree; on homogeneous models every bigraded basis class of length k has
/// e0 = k.
inline VerificationReport verify_toomer_consistency(const Analysis& a) {
  auto r = detail::start("toomer-consistency", a);
  if (!a.certified()) return detail::not_applicable(r, "not certified elliptic: " + a.certificate().reason);
  const auto& t = a.toomer();
  const auto& tm = a.toomer_engine();
  const int via_algebra = tm.toomer_of_algebra();
  const int via_fundamental = tm.toomer_via_fundamental_class();
  int max_class = 0;
  for (const auto& c : t.classes) max_class = std::max(max_class, c.e0);
  r.derived["e0_algebra"] = via_algebra;
  r.derived["e0_fundamental_class"] = via_fundamental;
  r.derived["max_class_value"] = max_class;
  if (via_algebra != via_fundamental || via_algebra != max_class)
    return detail::fail(r, "Toomer invariants disagree",
                        {{"algebra", via_algebra}, {"fundamental", via_fundamental}, {"max_class", max_class}});
  if (a.profile().homogeneous()) {
    const auto& bg = a.bigraded();
    std::size_t checked = 0;
    for (int i = 0; i <= bg.formal_dimension; ++i) {
      for (int k = 0; k < static_cast<int>(bg.h[i].size()); ++k) {
        if (bg.h[i][k] == 0) continue;
        for (const auto& x : a.engine().bigraded_group(i, k)->class_basis()) {
          ++checked;
          const int v = tm.toomer_of_class({i, x.representative, k});
          if (v != k)
            return detail::fail(r, "class of word length " + std::to_string(k) + " has e0 " + std::to_string(v),
                                {{"degree", i}, {"length", k}, {"e0", v},
                                 {"class", format_polynomial(a.model().algebra(), x.representative)}});
        }
      }
    }
    r.derived["bigraded_classes_checked"] = checked;
  }
  r.verdict = Verdict::Pass;
  r.reason = "e0 = " + std::to_string(via_algebra) + " by every route";
  return r;
}

inline VerificationReport verify_conjecture5(const Analysis& a) {
  auto r = detail::start("conjecture5", a);
  if (auto missing = detail::missing_homogeneous_elliptic(a)) return detail::not_applicable(r, *missing);
  const auto& t = a.toomer();
  const int e = t.e0_algebra;
  r.derived["e0"] = e;
  r.derived["mu"] = detail::spectrum_json(t);
  bool branch_i = true;
  for (int k = 1; k <= e - 1; ++k)
    if (t.spectrum[k] < 2) branch_i = false;
  if (branch_i) {
    r.verdict = Verdict::Pass;
    r.derived["branch"] = "i";
    r.reason = "every middle Toomer value is realized at least twice";
    return r;
  }
  const auto& engine = a.engine();
  const int N = formal_dimension_formula(a.model());
  int q = 0;
  for (int i = 1; i <= N && q == 0; ++i)
    if (engine.betti(i) > 0) q = i;
  bool branch_ii = q > 0 && N % q == 0;
  for (int i = 0; branch_ii && i <= N; ++i) {
    const std::size_t want = i % q == 0 ? 1 : 0;
    if (engine.betti(i) != want) branch_ii = false;
  }
  if (branch_ii) {
    const auto g = engine.group(q)->representative(0);
    GradedPolynomial power = GradedPolynomial::one(a.model().size());
    for (int j = 1; branch_ii && j * q <= N; ++j) {
      power = a.model().algebra().multiply(power, g);
      if (engine.group(j * q)->is_coboundary(power)) branch_ii = false;
    }
  }
  if (branch_ii) {
    r.verdict = Verdict::Pass;
    r.derived["branch"] = "ii";
    r.derived["generator_degree"] = q;
    r.derived["height"] = N / q;
    r.reason = "cohomology is a truncated polynomial algebra on one generator of degree " + std::to_string(q);
    return r;
  }
  r.derived["branch"] = "iii";
  return detail::fail(r, "counterexample candidate: neither branch holds", {{"model_text", print_model(a.model())}});
}

inline const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"theorem2", "lemma1",      "theorem3",          "corollary4",
                                               "remark2",  "nilmanifold", "toomer-consistency", "conjecture5"};
  return ids;
}

inline VerificationReport verify(const std::string& id, const Analysis& a) {
  if (id == "theorem2") return verify_theorem2(a);
  if (id == "lemma1") return verify_lemma1(a);
  if (id == "theorem3") return verify_theorem3(a);
  if (id == "corollary4") return verify_corollary4(a);
  if (id == "remark2") return verify_remark2(a);
  if (id == "nilmanifold") return verify_nilmanifold(a);
  if (id == "toomer-consistency") return verify_toomer_consistency(a);
  if (id == "conjecture5") return verify_conjecture5(a);
  throw UsageError("unknown theorem id '" + id + "'");
}

inline std::vector<VerificationReport> verify_all(const Analysis& a) {
  std::vector<VerificationReport> out;
  for (const auto& id : theorem_ids()) out.push_back(verify(id, a));
  return out;
}

/// Conjecture classification over a corpus; order follows the input.
inline std::vector<VerificationReport> scan_conjecture5(const std::vector<SullivanModel>& corpus,
                                                        std::size_t workers = worker_count()) {
  std::vector<VerificationReport> out(corpus.size());
  parallel_for(
      corpus.size(), [&](std::size_t i) { out[i] = verify_conjecture5(Analysis(corpus[i])); }, workers);
  return out;
}

}  // namespace sullivan

#pragma once

// Exact linear algebra over Q.
//
// Matrices keep sparse rows. Elimination works on primitive integer rows and
// returns the reduced echelon form over Q, which is unique, so everything
// derived from it is deterministic.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"

namespace sullivan {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

  static RatMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw UsageError("row length does not match column count");
      for (std::size_t c = 0; c < cols; ++c)
        if (sgn(rows[r][c]) != 0) m.data_[r].emplace_back(c, rows[r][c]);
    }
    return m;
  }

  static RatMatrix from_rows(const std::vector<Vector>& rows) {
    return from_rows(rows, rows.empty() ? 0 : rows.front().size());
  }

  static RatMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    RatMatrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw UsageError("column length does not match row count");
      for (std::size_t r = 0; r < rows; ++r)
        if (sgn(cols[c][r]) != 0) m.data_[r].emplace_back(c, cols[c][r]);
    }
    return m;
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::size_t nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& row : data_) n += row.size();
    return n;
  }

  Rational get(std::size_t r, std::size_t c) const {
    check_index(r, c);
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) return it->second;
    return Rational(0);
  }

  void set(std::size_t r, std::size_t c, const Rational& value) {
    check_index(r, c);
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      if (sgn(value) == 0)
        row.erase(it);
      else
        it->second = value;
    } else if (sgn(value) != 0) {
      row.emplace(it, c, value);
    }
  }

  void add(std::size_t r, std::size_t c, const Rational& value) { set(r, c, get(r, c) + value); }

  const SparseRow& sparse_row(std::size_t r) const { return data_.at(r); }

  Vector dense_row(std::size_t r) const {
    Vector out(cols_);
    for (const auto& [c, v] : data_.at(r)) out[c] = v;
    return out;
  }

  Vector column(std::size_t c) const {
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = get(r, c);
    return out;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
    return t;
  }

  Vector apply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw UsageError("vector length does not match column count");
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
    return out;
  }

  RatMatrix multiply(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw UsageError("matrix product dimension mismatch");
    RatMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Vector acc(rhs.cols_);
      for (const auto& [k, a] : data_[r])
        for (const auto& [c, b] : rhs.data_[k]) acc[c] += a * b;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        if (sgn(acc[c]) != 0) out.data_[r].emplace_back(c, acc[c]);
    }
    return out;
  }

  RatMatrix permute_rows(std::span<const std::size_t> order) const {
    if (order.size() != rows_) throw UsageError("row permutation has wrong length");
    RatMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = data_.at(order[r]);
    return out;
  }

  bool is_zero() const noexcept { return nonzeros() == 0; }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw UsageError("matrix index out of range");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

/// Reduced row echelon form: nonzero rows only, pivot entries equal to one.
struct Echelon {
  std::size_t cols = 0;
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return rows.size(); }
};

namespace detail {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

inline void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.second.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& e : row) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), g.get_mpz_t());
}

inline IntRow integer_row(const SparseRow& row) {
  mpz_class lcm = 1;
  for (const auto& e : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.second.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, q] : row) out.emplace_back(c, q.get_num() * (lcm / q.get_den()));
  make_primitive(out);
  return out;
}

inline mpz_class int_coeff(const IntRow& row, std::size_t c) {
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

// row := a*row - b*pivot with a, b chosen to cancel the entry in column c.
inline void eliminate(IntRow& row, const IntRow& pivot, std::size_t c) {
  const mpz_class p = int_coeff(pivot, c);
  const mpz_class r = int_coeff(row, c);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), r.get_mpz_t());
  const mpz_class a = p / g;
  const mpz_class b = r / g;
  IntRow out;
  out.reserve(row.size() + pivot.size());
  auto x = row.begin();
  auto y = pivot.begin();
  mpz_class v;
  while (x != row.end() || y != pivot.end()) {
    if (y == pivot.end() || (x != row.end() && x->first < y->first)) {
      out.emplace_back(x->first, a * x->second);
      ++x;
    } else if (x == row.end() || y->first < x->first) {
      out.emplace_back(y->first, -b * y->second);
      ++y;
    } else {
      v = a * x->second - b * y->second;
      if (sgn(v) != 0) out.emplace_back(x->first, v);
      ++x;
      ++y;
    }
  }
  make_primitive(out);
  row = std::move(out);
}

}  // namespace detail

/// Fraction-free sparse elimination on primitive integer rows. Rows are
/// bucketed by leading column and the shortest row in a bucket is the pivot.
/// The reduced echelon form is unique, so the pivot order does not affect the
/// result.
inline Echelon row_reduce(const RatMatrix& m) {
  Echelon out;
  out.cols = m.cols();
  std::map<std::size_t, std::vector<detail::IntRow>> buckets;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.sparse_row(r).empty()) continue;
    auto row = detail::integer_row(m.sparse_row(r));
    const std::size_t lead = row.front().first;
    buckets[lead].push_back(std::move(row));
  }

  std::vector<detail::IntRow> echelon;
  while (!buckets.empty()) {
    auto node = buckets.extract(buckets.begin());
    const std::size_t col = node.key();
    auto& rows = node.mapped();
    auto best = std::min_element(rows.begin(), rows.end(),
                                 [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::swap(*best, rows.front());
    for (std::size_t i = 1; i < rows.size(); ++i) {
      detail::eliminate(rows[i], rows.front(), col);
      if (rows[i].empty()) continue;
      const std::size_t lead = rows[i].front().first;
      buckets[lead].push_back(std::move(rows[i]));
    }
    out.pivots.push_back(col);
    echelon.push_back(std::move(rows.front()));
  }

  for (std::size_t j = echelon.size(); j-- > 0;)
    for (std::size_t i = 0; i < j; ++i)
      if (sgn(detail::int_coeff(echelon[i], out.pivots[j])) != 0) detail::eliminate(echelon[i], echelon[j], out.pivots[j]);

  out.rows.reserve(echelon.size());
  for (const auto& row : echelon) {
    Vector v(m.cols());
    const mpz_class& lead = row.front().second;
    for (const auto& [c, x] : row) {
      v[c] = Rational(x, lead);
      v[c].canonicalize();
    }
    out.rows.push_back(std::move(v));
  }
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return row_reduce(m).rank(); }

/// Rank of m reduced modulo the prime 2^61 - 1, or nullopt when some
/// denominator vanishes there. Never exceeds the rank over Q.
inline std::optional<std::size_t> rank_mod_p(const RatMatrix& m) {
  using u64 = std::uint64_t;
  constexpr u64 p = (u64{1} << 61) - 1;
  const auto mul = [](u64 a, u64 b) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); };
  const auto pow = [&](u64 a, u64 e) {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  };
  std::vector<std::vector<u64>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.sparse_row(r).empty()) continue;
    std::vector<u64> row(m.cols(), 0);
    for (const auto& [c, q] : m.sparse_row(r)) {
      const u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), p), den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
      if (den == 0) return std::nullopt;
      row[c] = mul(num, pow(den, p - 2));
    }
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    const u64 inv = pow(rows[rank][c], p - 2);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const u64 f = mul(rows[r][c], inv);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (rows[rank][k]) rows[r][k] = (rows[r][k] + p - mul(f, rows[rank][k])) % p;
    }
    ++rank;
  }
  return rank;
}

/// Scale a vector so its entries are coprime integers; the sign is kept.
inline Vector primitive(Vector v) {
  mpz_class lcm = 1;
  for (const auto& q : v)
    if (sgn(q) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_class g = 0;
  for (auto& q : v) {
    q *= lcm;
    if (sgn(q) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  }
  if (g > 1)
    for (auto& q : v) q /= g;
  return v;
}

/// Null-space basis, one vector per free column in increasing column order.
/// Each vector is primitive with a positive entry at its free column.
inline std::vector<Vector> kernel_basis(const RatMatrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t j = 0; j < e.rows.size(); ++j) v[e.pivots[j]] = -e.rows[j][f];
    basis.push_back(primitive(std::move(v)));
  }
  return basis;
}

/// Coefficients x with m*x = v, or nullopt when v is outside the column span.
/// Free variables are set to zero.
inline std::optional<Vector> solve_membership(const RatMatrix& m, std::span<const Rational> v) {
  if (v.size() != m.rows())
    throw UsageError("solve_membership: vector length " + std::to_string(v.size()) +
                     " does not match row count " + std::to_string(m.rows()));
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, x] : m.sparse_row(r)) aug.set(r, c, x);
    aug.set(r, m.cols(), v[r]);
  }
  const Echelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t j = 0; j < e.rows.size(); ++j) x[e.pivots[j]] = e.rows[j][m.cols()];
  return x;
}

inline std::size_t quotient_dimension(std::size_t ambient_dim, const std::vector<Vector>& subspace) {
  for (const auto& v : subspace)
    if (v.size() != ambient_dim) throw UsageError("quotient_dimension: vector has wrong length");
  if (subspace.empty()) return ambient_dim;
  return ambient_dim - rank(RatMatrix::from_rows(subspace, ambient_dim));
}

/// A subspace of Q^n held as a reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  Subspace(std::size_t ambient, const std::vector<Vector>& spanning) : ambient_(ambient) {
    if (spanning.empty()) return;
    Echelon e = row_reduce(RatMatrix::from_rows(spanning, ambient));
    rows_ = std::move(e.rows);
    pivots_ = std::move(e.pivots);
    for (const auto& row : rows_) {
      SparseRow sparse;
      for (std::size_t c = 0; c < row.size(); ++c)
        if (sgn(row[c]) != 0) sparse.emplace_back(c, row[c]);
      sparse_.push_back(std::move(sparse));
    }
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dimension() const noexcept { return rows_.size(); }
  const std::vector<Vector>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// v minus its projection along the echelon basis; zero iff v is in the span.
  Vector reduce(Vector v) const {
    if (v.size() != ambient_) throw UsageError("Subspace::reduce: vector has wrong length");
    Rational f;
    for (std::size_t j = 0; j < sparse_.size(); ++j) {
      f = v[pivots_[j]];
      if (sgn(f) == 0) continue;
      for (const auto& [c, x] : sparse_[j]) v[c] -= f * x;
    }
    return v;
  }

  bool contains(const Vector& v) const { return is_zero(reduce(v)); }

  /// Coordinates of v in the echelon basis, or nullopt when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw UsageError("Subspace::coordinates: vector has wrong length");
    Vector c(rows_.size());
    for (std::size_t j = 0; j < rows_.size(); ++j) c[j] = v[pivots_[j]];
    if (!contains(v)) return std::nullopt;
    return c;
  }

  bool contains(const Subspace& other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [this](const Vector& v) { return contains(v); });
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
  std::vector<SparseRow> sparse_;
  std::vector<std::size_t> pivots_;
};

}  // namespace sullivan

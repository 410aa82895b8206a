#include "torq/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "torq/errors.hpp"

namespace torq {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    assert(static_cast<int>(r.size()) == cols_);
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw DimensionMismatch("row length does not match column count");
    m.set_row(i, rows[i]);
  }
  return m;
}

IntVector IntMatrix::row(int r) const {
  IntVector v(cols_);
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

void IntMatrix::set_row(int r, const IntVector& v) {
  for (int c = 0; c < cols_; ++c) at(r, c) = v[c];
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matrix product shape mismatch");
  IntMatrix p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Integer& f = at(r, k);
      if (f == 0) continue;
      for (int c = 0; c < o.cols_; ++c) p.at(r, c) += f * o.at(k, c);
    }
  return p;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
  if (cols_ != static_cast<int>(v.size()))
    throw DimensionMismatch("matrix-vector shape mismatch");
  IntVector out(rows_, Integer(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r] += at(r, c) * v[c];
  return out;
}

void IntMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IntMatrix::negate_row(int i) {
  for (int c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
}

void IntMatrix::add_row_multiple(int i, int j, const Integer& f) {
  if (f == 0) return;
  for (int c = 0; c < cols_; ++c) at(i, c) += f * at(j, c);
}

void IntMatrix::combine_rows(int i, int j, const Integer& a, const Integer& b, const Integer& c,
                             const Integer& d) {
  for (int k = 0; k < cols_; ++k) {
    Integer ri = at(i, k), rj = at(j, k);
    at(i, k) = a * ri + b * rj;
    at(j, k) = c * ri + d * rj;
  }
}

Integer dot(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector scale(const Integer& f, const IntVector& v) {
  IntVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = f * v[i];
  return out;
}

IntVector negate(const IntVector& v) {
  IntVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g <= 1) return v;
  IntVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive(const RatVector& v) {
  Integer lcm = 1;
  for (const auto& x : v)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  IntVector scaled(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational r = v[i] * Rational(lcm);
    r.canonicalize();
    assert(r.get_den() == 1);
    scaled[i] = r.get_num();
  }
  return primitive(scaled);
}

int sign(const Integer& x) { return mpz_sgn(x.get_mpz_t()); }

std::strong_ordering compare(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return compare(a, b) == std::strong_ordering::less;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << ")";
  return os.str();
}

namespace {

// Fraction-free style Gaussian elimination on a rational working copy.
struct RatEchelon {
  std::vector<RatVector> rows;
  std::vector<int> pivot_cols;

  explicit RatEchelon(const std::vector<IntVector>& m) {
    for (const auto& r : m) {
      RatVector rr(r.size());
      for (size_t i = 0; i < r.size(); ++i) rr[i] = Rational(r[i]);
      rows.push_back(std::move(rr));
    }
    reduce();
  }

  void reduce() {
    size_t lead = 0;
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < ncols && lead < rows.size(); ++c) {
      size_t piv = lead;
      while (piv < rows.size() && rows[piv][c] == 0) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[lead], rows[piv]);
      Rational inv = rows[lead][c];
      for (size_t k = 0; k < ncols; ++k) rows[lead][k] /= inv;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (r == lead || rows[r][c] == 0) continue;
        Rational f = rows[r][c];
        for (size_t k = 0; k < ncols; ++k) rows[r][k] -= f * rows[lead][k];
      }
      pivot_cols.push_back(static_cast<int>(c));
      ++lead;
    }
    rows.resize(lead);
  }
};

}  // namespace

int rational_rank(const std::vector<IntVector>& rows) {
  if (rows.empty()) return 0;
  RatEchelon e(rows);
  return static_cast<int>(e.rows.size());
}

bool solve_rational(const std::vector<IntVector>& rows, const RatVector& rhs, RatVector& x) {
  // Solve M x = rhs where the rows of M are given; build augmented system.
  size_t m = rows.size();
  if (m != rhs.size()) throw DimensionMismatch("solve_rational shape mismatch");
  size_t n = m == 0 ? 0 : rows[0].size();
  std::vector<RatVector> aug(m, RatVector(n + 1));
  for (size_t r = 0; r < m; ++r) {
    for (size_t c = 0; c < n; ++c) aug[r][c] = Rational(rows[r][c]);
    aug[r][n] = rhs[r];
  }
  // Rational elimination over the augmented matrix.
  size_t lead = 0;
  std::vector<int> pivot_col_of_row;
  for (size_t c = 0; c < n && lead < m; ++c) {
    size_t piv = lead;
    while (piv < m && aug[piv][c] == 0) ++piv;
    if (piv == m) continue;
    std::swap(aug[lead], aug[piv]);
    Rational inv = aug[lead][c];
    for (size_t k = 0; k <= n; ++k) aug[lead][k] /= inv;
    for (size_t r = 0; r < m; ++r) {
      if (r == lead || aug[r][c] == 0) continue;
      Rational f = aug[r][c];
      for (size_t k = 0; k <= n; ++k) aug[r][k] -= f * aug[lead][k];
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    ++lead;
  }
  for (size_t r = lead; r < m; ++r)
    if (aug[r][n] != 0) return false;  // inconsistent
  x.assign(n, Rational(0));
  for (size_t r = 0; r < lead; ++r) x[pivot_col_of_row[r]] = aug[r][n];
  return true;
}

bool in_rational_span(const std::vector<IntVector>& rows, const IntVector& v) {
  if (is_zero(v)) return true;
  if (rows.empty()) return false;
  std::vector<IntVector> cols;  // transpose: solve B^T c = v
  size_t n = rows[0].size();
  for (size_t c = 0; c < n; ++c) {
    IntVector col(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][c];
    cols.push_back(std::move(col));
  }
  RatVector rhs(n);
  for (size_t i = 0; i < n; ++i) rhs[i] = Rational(v[i]);
  RatVector x;
  return solve_rational(cols, rhs, x);
}

IntVector project_off_span(const std::vector<IntVector>& basis, const IntVector& v) {
  if (basis.empty()) return primitive(v);
  // v - B^T (B B^T)^{-1} B v, computed by solving the Gram system.
  size_t k = basis.size(), n = v.size();
  std::vector<IntVector> gram(k, IntVector(k));
  RatVector rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = Rational(dot(basis[i], v));
  }
  RatVector coeff;
  bool ok = solve_rational(gram, rhs, coeff);
  assert(ok);
  (void)ok;
  RatVector out(n);
  for (size_t c = 0; c < n; ++c) {
    out[c] = Rational(v[c]);
    for (size_t i = 0; i < k; ++i) out[c] -= coeff[i] * Rational(basis[i][c]);
  }
  return primitive(out);
}

}  // namespace torq

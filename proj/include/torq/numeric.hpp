#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

namespace torq {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Integer& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Integer& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  IntVector row(int r) const;
  void set_row(int r, const IntVector& v);
  std::vector<IntVector> row_list() const;

  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(int i, int j);
  void negate_row(int i);
  /// row i += f * row j
  void add_row_multiple(int i, int j, const Integer& f);
  /// replace rows i,j by (a*ri + b*rj, c*ri + d*rj)
  void combine_rows(int i, int j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d);

 private:
  int rows_, cols_;
  std::vector<Integer> a_;
};

// --- vector helpers ---

Integer dot(const IntVector& a, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& f, const IntVector& v);
IntVector negate(const IntVector& v);
bool is_zero(const IntVector& v);

/// Divides by the gcd of the entries. The zero vector is returned unchanged;
/// the direction (overall sign) is preserved.
IntVector primitive(const IntVector& v);

/// Primitive vector from a rational one, same direction.
IntVector primitive(const RatVector& v);

int sign(const Integer& x);

/// Lexicographic comparison, used for all canonical orderings.
std::strong_ordering compare(const IntVector& a, const IntVector& b);
bool lex_less(const IntVector& a, const IntVector& b);

std::string to_string(const IntVector& v);

// --- exact rational linear algebra on small systems ---

/// Rank over the rationals of the row span.
int rational_rank(const std::vector<IntVector>& rows);

/// Solves M x = rhs exactly (M given as rows, square or not); returns true and
/// fills x when a solution exists.
bool solve_rational(const std::vector<IntVector>& rows, const RatVector& rhs, RatVector& x);

/// True iff v lies in the rational span of the given rows.
bool in_rational_span(const std::vector<IntVector>& rows, const IntVector& v);

/// Orthogonal projection of v onto the complement of the row span of B,
/// returned as a primitive integer vector of the same direction
/// (zero when v lies in the span of B).
IntVector project_off_span(const std::vector<IntVector>& basis, const IntVector& v);

}  // namespace torq

#include "torq/lattice.hpp"

#include <algorithm>
#include <cassert>

#include "torq/errors.hpp"

namespace torq {

Sublattice Sublattice::zero(int ambient_rank) {
  return Sublattice{ambient_rank, IntMatrix(0, ambient_rank), true};
}

Sublattice Sublattice::full(int ambient_rank) {
  return Sublattice{ambient_rank, IntMatrix::identity(ambient_rank), true};
}

Sublattice Sublattice::from_generators(int ambient_rank, const std::vector<IntVector>& gens,
                                       bool saturated) {
  IntMatrix m = IntMatrix::from_rows(gens, ambient_rank);
  HnfResult h = hermite_normal_form(m);
  int r = 0;
  for (int i = 0; i < h.h.rows(); ++i)
    if (!is_zero(h.h.row(i))) ++r;
  IntMatrix basis(r, ambient_rank);
  for (int i = 0; i < r; ++i) basis.set_row(i, h.h.row(i));
  return Sublattice{ambient_rank, basis, saturated};
}

bool Sublattice::contains(const IntVector& v) const {
  if (static_cast<int>(v.size()) != ambient_rank)
    throw DimensionMismatch("sublattice membership: wrong vector length");
  // Reduce v against the HNF basis; membership iff the remainder is zero and
  // all quotients are integral.
  IntVector w = v;
  for (int i = 0; i < basis.rows(); ++i) {
    IntVector b = basis.row(i);
    int p = 0;
    while (p < ambient_rank && b[p] == 0) ++p;
    if (p == ambient_rank) continue;
    if (w[p] % b[p] != 0) return false;
    Integer q = w[p] / b[p];
    for (int c = 0; c < ambient_rank; ++c) w[c] -= q * b[c];
  }
  return is_zero(w);
}

HnfResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    // Clear the column below `row` using extended gcd steps.
    int piv = -1;
    for (int r = row; r < m.rows(); ++r)
      if (h.at(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    h.swap_rows(row, piv);
    u.swap_rows(row, piv);
    for (int r = row + 1; r < m.rows(); ++r) {
      if (h.at(r, col) == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h.at(row, col).get_mpz_t(),
                 h.at(r, col).get_mpz_t());
      Integer a = h.at(row, col) / g, b = h.at(r, col) / g;
      // (row, r) <- (s*row + t*r, -b*row + a*r); determinant of the 2x2 block is 1.
      h.combine_rows(row, r, s, t, -b, a);
      u.combine_rows(row, r, s, t, -b, a);
    }
    if (h.at(row, col) < 0) {
      h.negate_row(row);
      u.negate_row(row);
    }
    for (int r = 0; r < row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(r, col).get_mpz_t(), h.at(row, col).get_mpz_t());
      h.add_row_multiple(r, row, -q);
      u.add_row_multiple(r, row, -q);
    }
    ++row;
  }
  return {h, u};
}

SnfResult smith_normal_form(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());

  auto col_combine = [&](IntMatrix& mat, int i, int j, const Integer& a, const Integer& b,
                         const Integer& c, const Integer& dd) {
    for (int r = 0; r < mat.rows(); ++r) {
      Integer ci = mat.at(r, i), cj = mat.at(r, j);
      mat.at(r, i) = a * ci + b * cj;
      mat.at(r, j) = c * ci + dd * cj;
    }
  };

  int limit = std::min(m.rows(), m.cols());
  auto diagonalize = [&](int start) {
  int t = start;
  while (t < limit) {
    // Find a nonzero pivot in the remaining block.
    int pr = -1, pc = -1;
    for (int r = t; r < d.rows() && pr < 0; ++r)
      for (int c = t; c < d.cols(); ++c)
        if (d.at(r, c) != 0) {
          pr = r;
          pc = c;
          break;
        }
    if (pr < 0) break;
    d.swap_rows(t, pr);
    u.swap_rows(t, pr);
    if (pc != t) {
      for (int r = 0; r < d.rows(); ++r) std::swap(d.at(r, t), d.at(r, pc));
      for (int r = 0; r < v.rows(); ++r) std::swap(v.at(r, t), v.at(r, pc));
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int r = t + 1; r < d.rows(); ++r) {
        if (d.at(r, t) == 0) continue;
        if (d.at(r, t) % d.at(t, t) == 0) {
          // Plain elimination keeps the pivot row intact.
          Integer q = d.at(r, t) / d.at(t, t);
          d.add_row_multiple(r, t, -q);
          u.add_row_multiple(r, t, -q);
          continue;
        }
        Integer g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), d.at(t, t).get_mpz_t(),
                   d.at(r, t).get_mpz_t());
        Integer a = d.at(t, t) / g, b = d.at(r, t) / g;
        d.combine_rows(t, r, s, tt, -b, a);
        u.combine_rows(t, r, s, tt, -b, a);
      }
      for (int c = t + 1; c < d.cols(); ++c) {
        if (d.at(t, c) == 0) continue;
        if (d.at(t, c) % d.at(t, t) == 0) {
          // Plain elimination keeps the pivot column intact: no re-check needed.
          Integer q = d.at(t, c) / d.at(t, t);
          col_combine(d, t, c, Integer(1), Integer(0), -q, Integer(1));
          col_combine(v, t, c, Integer(1), Integer(0), -q, Integer(1));
          continue;
        }
        Integer g, s, tt;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), tt.get_mpz_t(), d.at(t, t).get_mpz_t(),
                   d.at(t, c).get_mpz_t());
        Integer a = d.at(t, t) / g, b = d.at(t, c) / g;
        col_combine(d, t, c, s, tt, -b, a);
        col_combine(v, t, c, s, tt, -b, a);
        dirty = true;  // gcd column ops can refill the pivot column
      }
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
    ++t;
  }
  };
  diagonalize(0);
  // Enforce the divisor chain d_11 | d_22 | ...: a violating pair is folded
  // back into an off-diagonal entry and re-eliminated, which replaces it by
  // (gcd, lcm). Terminates since the leading entry strictly decreases.
  for (bool clean = false; !clean;) {
    clean = true;
    for (int i = 0; i + 1 < limit; ++i) {
      if (d.at(i, i) == 0 || d.at(i + 1, i + 1) % d.at(i, i) == 0) continue;
      col_combine(d, i, i + 1, Integer(1), Integer(1), Integer(0), Integer(1));
      col_combine(v, i, i + 1, Integer(1), Integer(1), Integer(0), Integer(1));
      diagonalize(i);
      clean = false;
      break;
    }
  }
  return {d, u, v};
}

Sublattice kernel_lattice(const IntMatrix& a) {
  // Row HNF of A^T: rows of U matching zero rows of H form a kernel basis.
  if (a.rows() == 0) return Sublattice::full(a.cols());
  HnfResult h = hermite_normal_form(a.transpose());
  std::vector<IntVector> gens;
  for (int r = 0; r < h.h.rows(); ++r)
    if (is_zero(h.h.row(r))) gens.push_back(h.u.row(r));
  Sublattice out = Sublattice::from_generators(a.cols(), gens, true);
  return out;
}

Sublattice saturate(const Sublattice& l) {
  if (l.rank() == 0) return Sublattice::zero(l.ambient_rank);
  // Saturation = kernel of the kernel: double orthogonal complement in Z^n.
  Sublattice perp = kernel_lattice(l.basis);
  Sublattice sat = kernel_lattice(perp.basis);
  sat.ambient_rank = l.ambient_rank;
  return sat;
}

Sublattice canonicalize(const Sublattice& l) {
  return Sublattice::from_generators(l.ambient_rank, l.basis.row_list(), l.saturated);
}

Sublattice saturated_sum(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank != b.ambient_rank)
    throw DimensionMismatch("sublattice sum: ambient rank mismatch");
  std::vector<IntVector> gens = a.basis.row_list();
  for (const auto& r : b.basis.row_list()) gens.push_back(r);
  return saturate(Sublattice::from_generators(a.ambient_rank, gens));
}

QuotientLattice quotient_projection(int ambient_rank, const Sublattice& l) {
  if (l.ambient_rank != ambient_rank)
    throw DimensionMismatch("quotient_projection: ambient rank mismatch");
  if (!l.saturated)
    throw NotSaturated("quotient_projection requires a saturated sublattice");
  {
    Sublattice check = saturate(l);
    if (canonicalize(l).basis != check.basis)
      throw NotSaturated("sublattice flagged saturated but is not");
  }
  int r = l.rank();
  int k = ambient_rank - r;
  IntMatrix p(k, ambient_rank);
  if (r == 0) {
    p = IntMatrix::identity(ambient_rank);
  } else {
    // U B V = [I_r | 0]; the first r rows of V^{-1} span L, so the transposes
    // of the last k columns of V give a surjection with kernel exactly L.
    SnfResult s = smith_normal_form(l.basis);
    for (int i = 0; i < r; ++i)
      if (s.d.at(i, i) != 1)
        throw NotSaturated("sublattice flagged saturated but is not");
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < ambient_rank; ++c) p.at(i, c) = s.v.at(c, r + i);
    // Deterministic normalization: row Hermite form keeps the kernel and
    // surjectivity (left-unimodular change of target coordinates).
    p = hermite_normal_form(p).h;
  }
  // Integral right inverse via the Smith form of P.
  SnfResult sp = smith_normal_form(p);
  for (int i = 0; i < k; ++i)
    if (sp.d.at(i, i) != 1)
      throw PreconditionViolated("internal: projection is not surjective");
  IntMatrix e(ambient_rank, k);  // [I_k ; 0]
  for (int i = 0; i < k; ++i) e.at(i, i) = 1;
  IntMatrix section = sp.v * (e * sp.u);
  QuotientLattice q;
  q.source_rank = ambient_rank;
  q.target_rank = k;
  q.projection = p;
  q.kernel = canonicalize(l);
  q.section = section;
  assert(p * section == IntMatrix::identity(k));
  return q;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionMismatch("inverse of non-square matrix");
  HnfResult h = hermite_normal_form(u);
  if (h.h != IntMatrix::identity(u.rows()))
    throw PreconditionViolated("matrix is not unimodular");
  return h.u;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  int n = m.rows();
  IntMatrix a = m;
  Integer det = 1;
  Integer prev = 1;
  int swaps = 0;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (a.at(r, k) != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      a.swap_rows(k, piv);
      ++swaps;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      }
    prev = a.at(k, k);
  }
  det = a.at(n - 1, n - 1);
  return swaps % 2 == 0 ? det : -det;
}

}  // namespace torq

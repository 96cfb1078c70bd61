#include "regconst/matrix.hpp"

namespace regconst {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

namespace {

void subtract_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (m(source, j) != 0) m(target, j) -= q * m(source, j);
  }
}

// Brings the first `reduce_cols` columns into Hermite normal form using
// unimodular row operations on whole rows. Returns the number of pivot rows.
std::size_t echelon(IntMatrix& m, std::size_t reduce_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < reduce_cols && r < m.rows(); ++c) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (m(i, c) == 0) continue;
        if (best == m.rows() || abs(m(i, c)) < abs(m(best, c))) best = i;
      }
      if (best == m.rows()) break;
      has_pivot = true;
      m.swap_rows(r, best);
      bool cleared = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        subtract_multiple(m, i, r, q);
        if (m(i, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    if (m(r, c) < 0) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      subtract_multiple(m, i, r, q);
    }
    ++r;
  }
  return r;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix rows) {
  const std::size_t rank = echelon(rows, rows.cols());
  IntMatrix out(rank, rows.cols());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) out(i, j) = rows(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix aug(n, m + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug(i, j) = a(j, i);
    aug(i, m + i) = 1;
  }
  const std::size_t rank = echelon(aug, m);
  IntMatrix kernel(n - rank, n);
  for (std::size_t i = rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) kernel(i - rank, j) = aug(i, m + j);
  return hermite_normal_form(std::move(kernel));
}

Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorCategory::internal, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCategory::internal, "determinant of a non-square matrix");
  IntMatrix cleared(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer row_lcm = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational scaled = m(i, j) * row_lcm;
      cleared(i, j) = scaled.get_num();
    }
    scale *= row_lcm;
  }
  Rational det(determinant(std::move(cleared)), scale);
  det.canonicalize();
  return det;
}

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(RatMatrix& m, std::size_t reduce_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < reduce_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix copy = m;
  return row_reduce(copy, copy.cols()).size();
}

std::optional<RatMatrix> solve(const RatMatrix& b, const RatMatrix& y) {
  if (b.rows() != y.rows()) fail(ErrorCategory::internal, "solve dimension mismatch");
  const std::size_t d = b.cols();
  RatMatrix aug(b.rows(), d + y.cols());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < d; ++j) aug(i, j) = b(i, j);
    for (std::size_t j = 0; j < y.cols(); ++j) aug(i, d + j) = y(i, j);
  }
  const auto pivots = row_reduce(aug, d);
  if (pivots.size() != d) fail(ErrorCategory::internal, "solve requires full column rank");
  for (std::size_t i = d; i < aug.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j)
      if (aug(i, d + j) != 0) return std::nullopt;
  RatMatrix x(d, y.cols());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) x(i, j) = aug(i, d + j);
  return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCategory::internal, "inverse of a non-square matrix");
  if (rank(m) != m.rows()) return std::nullopt;
  return solve(m, RatMatrix::identity(m.rows()));
}

}  // namespace regconst

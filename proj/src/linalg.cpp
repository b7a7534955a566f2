#include "kstab/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace kstab {

namespace {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Multiply each row by the lcm of its denominators. Returns the product of
// the scale factors so the caller can undo it for determinants.
IntMatrix integerize_rows(const Matrix& a, mpz_class* scale) {
  IntMatrix out(a.size());
  *scale = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class l = 1;
    for (const auto& x : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
    out[i].reserve(a[i].size());
    for (const auto& x : a[i]) {
      mpz_class v = x.raw().get_num() * (l / x.raw().get_den());
      out[i].push_back(std::move(v));
    }
    *scale *= l;
  }
  return out;
}

// In-place Bareiss elimination over the first `cols` columns. Returns the
// final pivot (the determinant of the leading block up to sign) and the sign
// from row swaps, or 0 when the leading square block is singular.
mpz_class bareiss(IntMatrix& m, std::size_t cols, int* swap_sign) {
  const std::size_t n = m.size();
  *swap_sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n && k < cols; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      *swap_sign = -*swap_sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < m[i].size(); ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]);
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return prev;
}

// Reduced row echelon form with rational arithmetic; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = Rational(1) / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return Rational(1);
  for (const auto& r : a) {
    if (r.size() != n) throw std::invalid_argument("determinant: matrix is not square");
  }
  mpz_class scale;
  IntMatrix m = integerize_rows(a, &scale);
  int sign = 1;
  mpz_class d = bareiss(m, n, &sign);
  return Rational(mpq_class(d * sign, scale));
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  const std::size_t n = a.size();
  Matrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  mpz_class scale;
  IntMatrix m = integerize_rows(aug, &scale);
  int sign = 1;
  if (n > 0 && bareiss(m, n, &sign) == 0) return std::nullopt;
  // Back substitution on the fraction-free upper triangle.
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) s -= Rational(m[ii][j]) * x[j];
    x[ii] = s / Rational(m[ii][ii]);
  }
  return x;
}

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  Matrix m = a;
  return rref(m, a[0].size()).size();
}

std::vector<Vec> kernel(const Matrix& a, std::size_t cols) {
  Matrix m = a;
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

int affine_dimension(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return static_cast<int>(rank(diffs));
}

std::vector<Rational> leading_minors(const Matrix& a) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    Matrix sub(k, Vec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
    out.push_back(determinant(sub));
  }
  return out;
}

}  // namespace kstab

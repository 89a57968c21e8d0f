#include "semifib/matrix.hpp"

#include <stdexcept>

namespace semifib {

PolyMatrix::PolyMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), e_(rows * cols, Polynomial(ring)) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

PolyMatrix PolyMatrix::from_rows(std::vector<std::vector<Polynomial>> rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty matrix");
  const Ring ring = rows.front().front().ring();
  PolyMatrix out(ring, rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != out.cols_) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < out.cols_; ++c) {
      if (!(rows[r][c].ring() == ring)) throw std::invalid_argument("matrix entries from different rings");
      out.at(r, c) = std::move(rows[r][c]);
    }
  }
  return out;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  PolyMatrix out(ring_, rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out.at(r, c) = at(rows.at(r), cols.at(c));
  return out;
}

namespace {

void require_square(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
}

Polynomial cofactor(const PolyMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (cols.size() == 1) return m.at(row, cols.front());
  Polynomial sum(m.ring());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const Polynomial& a = m.at(row, cols[k]);
    if (a.is_zero()) continue;
    const std::size_t col = cols[k];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    Polynomial term = a * cofactor(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), col);
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

}  // namespace

Polynomial determinant_cofactor(const PolyMatrix& m) {
  require_square(m);
  std::vector<std::size_t> cols(m.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
  return cofactor(m, cols, 0);
}

Polynomial determinant_bareiss(const PolyMatrix& m) {
  require_square(m);
  const std::size_t n = m.rows();
  PolyMatrix a = m;
  Polynomial prev = Polynomial::constant(m.ring(), 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a.at(p, k).is_zero()) ++p;
      if (p == n) return Polynomial(m.ring());
      for (std::size_t c = 0; c < n; ++c) std::swap(a.at(k, c), a.at(p, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a.at(i, j) = divide_exact(a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
      a.at(i, k) = Polynomial(m.ring());
    }
    prev = a.at(k, k);
  }
  Polynomial det = a.at(n - 1, n - 1);
  return negate ? -det : det;
}

Polynomial determinant(const PolyMatrix& m) {
  require_square(m);
  return m.rows() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

Polynomial resultant(const Polynomial& f, const Polynomial& g, std::size_t var) {
  if (!(f.ring() == g.ring())) throw std::invalid_argument("resultant of polynomials from different rings");
  if (var >= f.ring().size()) throw std::out_of_range("resultant variable out of range");
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant with a zero polynomial");
  const int p = f.degree_in(var);
  const int q = g.degree_in(var);
  if (p == 0 && q == 0) throw std::invalid_argument("resultant: both polynomials are constant in the variable");
  if (q == 0) return g.pow(static_cast<unsigned>(p));
  if (p == 0) return f.pow(static_cast<unsigned>(q));
  const std::size_t n = static_cast<std::size_t>(p + q);
  PolyMatrix s(f.ring(), n, n);
  // Rows of f first, coefficients from the top degree down.
  for (int r = 0; r < q; ++r)
    for (int k = 0; k <= p; ++k) s.at(r, r + k) = f.coefficient_in(var, static_cast<unsigned>(p - k));
  for (int r = 0; r < p; ++r)
    for (int k = 0; k <= q; ++k) s.at(q + r, r + k) = g.coefficient_in(var, static_cast<unsigned>(q - k));
  return determinant(s);
}

std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace semifib

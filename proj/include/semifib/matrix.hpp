#pragma once

#include <cstddef>
#include <vector>

#include "semifib/polynomial.hpp"

namespace semifib {

/// Rectangular matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix(Ring ring, std::size_t rows, std::size_t cols);
  // Throws std::invalid_argument on ragged rows, mixed rings or no entries.
  static PolyMatrix from_rows(std::vector<std::vector<Polynomial>> rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Polynomial& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

 private:
  Ring ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Polynomial> e_;
};

// Cofactor expansion for n <= 4, Bareiss otherwise. Throws on non-square input.
Polynomial determinant(const PolyMatrix& m);
Polynomial determinant_cofactor(const PolyMatrix& m);
Polynomial determinant_bareiss(const PolyMatrix& m);

// Sylvester resultant with respect to `var`. When one input is constant in
// var the result is that input raised to the other's degree; both constant
// is an error, as is a zero input.
Polynomial resultant(const Polynomial& f, const Polynomial& g, std::size_t var);

// Exact rank of a rational matrix (rows of equal length).
std::size_t rank(std::vector<std::vector<Rational>> rows);

}  // namespace semifib

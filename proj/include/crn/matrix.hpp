#pragma once

#include <vector>

#include "crn/rational.hpp"

namespace crn {

// Dense matrix of exact rationals, row-major. Shapes with zero rows or zero
// columns are legal: a 0 x q constraint block constrains nothing, so its
// kernel is all of Q^q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);

  static RationalMatrix identity(int n);
  // Every row must have length cols.
  static RationalMatrix from_rows(const std::vector<RatVec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  RatVec row(int i) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> entries_;
};

struct RrefResult {
  RationalMatrix reduced;
  std::vector<int> pivot_cols;  // ascending, one per nonzero row
};

// Gauss-Jordan reduced row echelon form. Pivot selection is the first row
// with a nonzero entry in the current column, so the result is deterministic.
RrefResult rref(RationalMatrix m);

int rank(const RationalMatrix& m);

// Kernel basis in the standard parametrization: one vector per free column f,
// carrying 1 at f and -reduced(i, f) at the i-th pivot column. Ordered by
// ascending free column. A 0 x q matrix yields the standard basis of Q^q.
std::vector<RatVec> kernel_basis(const RationalMatrix& m);

// Basis of the orthogonal complement of span(vectors) inside Q^ambient,
// computed as the kernel of the matrix whose rows are the given vectors.
// An empty collection yields the standard basis of Q^ambient.
std::vector<RatVec> orthogonal_complement_basis(const std::vector<RatVec>& vectors, int ambient);

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RatVec matvec(const RationalMatrix& m, const RatVec& x);
RationalMatrix vstack(const RationalMatrix& top, const RationalMatrix& bottom);

int span_rank(const std::vector<RatVec>& vectors, int ambient);
bool in_span(const RatVec& v, const std::vector<RatVec>& vectors);
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, int ambient);

}  // namespace crn

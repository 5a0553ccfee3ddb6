#include "crn/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace crn {

RationalMatrix::RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  entries_.assign(static_cast<std::size_t>(rows) * cols, Rational(0));
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RatVec>& rows, int cols) {
  RationalMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols)
      throw std::invalid_argument("row length does not match column count");
    for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

RatVec RationalMatrix::row(int i) const {
  RatVec out(cols_);
  for (int j = 0; j < cols_; ++j) out[j] = at(i, j);
  return out;
}

RrefResult rref(RationalMatrix m) {
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < m.cols() && lead < m.rows(); ++col) {
    int pivot_row = -1;
    for (int i = lead; i < m.rows(); ++i) {
      if (sgn(m.at(i, col)) != 0) {
        pivot_row = i;
        break;
      }
    }
    if (pivot_row < 0) continue;
    if (pivot_row != lead)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(lead, j), m.at(pivot_row, j));
    const Rational inv = 1 / m.at(lead, col);
    for (int j = 0; j < m.cols(); ++j) m.at(lead, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == lead || sgn(m.at(i, col)) == 0) continue;
      const Rational f = m.at(i, col);
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(lead, j);
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

int rank(const RationalMatrix& m) { return static_cast<int>(rref(m).pivot_cols.size()); }

std::vector<RatVec> kernel_basis(const RationalMatrix& m) {
  const RrefResult r = rref(m);
  const int q = m.cols();
  std::vector<bool> is_pivot(q, false);
  for (int p : r.pivot_cols) is_pivot[p] = true;

  std::vector<RatVec> basis;
  for (int f = 0; f < q; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(q, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
      v[r.pivot_cols[i]] = -r.reduced.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVec> orthogonal_complement_basis(const std::vector<RatVec>& vectors, int ambient) {
  return kernel_basis(RationalMatrix::from_rows(vectors, ambient));
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul shape mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (sgn(a.at(i, k)) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

RatVec matvec(const RationalMatrix& m, const RatVec& x) {
  if (static_cast<int>(x.size()) != m.cols()) throw std::invalid_argument("matvec shape mismatch");
  RatVec out(m.rows(), Rational(0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * x[j];
  return out;
}

RationalMatrix vstack(const RationalMatrix& top, const RationalMatrix& bottom) {
  const bool top_empty = top.rows() == 0 && top.cols() == 0;
  const bool bottom_empty = bottom.rows() == 0 && bottom.cols() == 0;
  if (!top_empty && !bottom_empty && top.cols() != bottom.cols())
    throw std::invalid_argument("vstack column mismatch");
  const int cols = top_empty ? bottom.cols() : top.cols();
  RationalMatrix out(top.rows() + bottom.rows(), cols);
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < cols; ++j) out.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < cols; ++j) out.at(top.rows() + i, j) = bottom.at(i, j);
  return out;
}

int span_rank(const std::vector<RatVec>& vectors, int ambient) {
  return rank(RationalMatrix::from_rows(vectors, ambient));
}

bool in_span(const RatVec& v, const std::vector<RatVec>& vectors) {
  const int ambient = static_cast<int>(v.size());
  std::vector<RatVec> extended = vectors;
  extended.push_back(v);
  return span_rank(vectors, ambient) == span_rank(extended, ambient);
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, int ambient) {
  std::vector<RatVec> joint = a;
  joint.insert(joint.end(), b.begin(), b.end());
  const int ra = span_rank(a, ambient);
  const int rb = span_rank(b, ambient);
  return ra == rb && ra == span_rank(joint, ambient);
}

}  // namespace crn

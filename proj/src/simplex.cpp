#include "crn/simplex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace crn {

bool verify_positive_kernel_witness(const RationalMatrix& constraints,
                                    const std::vector<int>& positive_coords,
                                    const RatVec& witness) {
  if (static_cast<int>(witness.size()) != constraints.cols()) return false;
  if (!is_zero_vec(matvec(constraints, witness))) return false;
  for (int c : positive_coords)
    if (witness[c] < 1) return false;
  return true;
}

namespace {

// One standard-form column: which original coordinate it feeds and with what
// sign (positive coordinates are shifted, x = 1 + s; free coordinates are
// split, x = u - v).
struct ColumnMap {
  int coord = 0;
  int sign = 1;
};

}  // namespace

FeasibilityCertificate positive_kernel_feasible(const RationalMatrix& constraints,
                                                const std::vector<int>& positive_coords) {
  const int q = constraints.cols();
  const int m = constraints.rows();
  std::set<int> positive(positive_coords.begin(), positive_coords.end());
  for (int c : positive)
    if (c < 0 || c >= q) throw std::invalid_argument("positive coordinate out of range");

  // Standard form: one shifted variable per positive coordinate, a split
  // pair per free coordinate.
  std::vector<ColumnMap> columns;
  for (int c = 0; c < q; ++c) {
    if (positive.count(c)) {
      columns.push_back({c, +1});
    } else {
      columns.push_back({c, +1});
      columns.push_back({c, -1});
    }
  }
  const int n0 = static_cast<int>(columns.size());

  // Tableau rows: A z = b with z >= 0, b made nonnegative row by row.
  // b_i = -sum over positive coords of the constraint entry (from x = 1 + s).
  std::vector<RatVec> tab(m, RatVec(n0 + m + 1, Rational(0)));
  for (int i = 0; i < m; ++i) {
    Rational rhs = 0;
    for (int c : positive) rhs -= constraints.at(i, c);
    for (int j = 0; j < n0; ++j)
      tab[i][j] = Rational(columns[j].sign) * constraints.at(i, columns[j].coord);
    tab[i][n0 + m] = rhs;
    if (sgn(rhs) < 0)
      for (Rational& cell : tab[i]) cell = -cell;
    tab[i][n0 + i] = 1;  // artificial
  }

  // Phase-1 objective: minimize the sum of artificials. Reduced-cost row and
  // its right-hand cell (-objective) are pivoted together with the tableau.
  RatVec cost(n0 + m + 1, Rational(0));
  for (int j = 0; j < n0; ++j)
    for (int i = 0; i < m; ++i) cost[j] -= tab[i][j];
  for (int i = 0; i < m; ++i) cost[n0 + m] -= tab[i][n0 + m];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n0 + i;

  while (true) {
    // Bland: smallest-index improving column. Artificial columns never
    // re-enter; if only they look improving, the duals certify infeasibility.
    int entering = -1;
    for (int j = 0; j < n0; ++j) {
      if (sgn(cost[j]) < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    int leave = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (sgn(tab[i][entering]) <= 0) continue;
      const Rational ratio = tab[i][n0 + m] / tab[i][entering];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("phase-1 objective unbounded");

    const Rational inv = 1 / tab[leave][entering];
    for (Rational& cell : tab[leave]) cell *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || sgn(tab[i][entering]) == 0) continue;
      const Rational f = tab[i][entering];
      for (int j = 0; j <= n0 + m; ++j) tab[i][j] -= f * tab[leave][j];
    }
    if (sgn(cost[entering]) != 0) {
      const Rational f = cost[entering];
      for (int j = 0; j <= n0 + m; ++j) cost[j] -= f * tab[leave][j];
    }
    basis[leave] = entering;
  }

  // cost.back() holds -objective; zero residual means the kernel point exists.
  if (sgn(cost[n0 + m]) != 0) return {};

  RatVec z(n0, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n0) z[basis[i]] = tab[i][n0 + m];

  RatVec x(q, Rational(0));
  for (int c : positive) x[c] = 1;
  for (int j = 0; j < n0; ++j) x[columns[j].coord] += Rational(columns[j].sign) * z[j];

  if (!verify_positive_kernel_witness(constraints, positive_coords, x))
    throw std::logic_error("simplex witness failed substitution check");
  return {true, std::move(x)};
}

}  // namespace crn

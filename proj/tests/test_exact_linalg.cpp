#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "crn/matrix.hpp"
#include "crn/rational.hpp"
#include "crn/simplex.hpp"

using crn::rat;
using crn::Rational;
using crn::RationalMatrix;
using crn::RatVec;

namespace {

RationalMatrix from_ints(const std::vector<std::vector<long>>& rows, int cols) {
  std::vector<RatVec> qrows;
  for (const std::vector<long>& row : rows) {
    RatVec q;
    for (long v : row) q.push_back(rat(v));
    qrows.push_back(std::move(q));
  }
  return RationalMatrix::from_rows(qrows, cols);
}

RatVec ints(const std::vector<long>& v) {
  RatVec out;
  for (long x : v) out.push_back(rat(x));
  return out;
}

bool annihilates(const RationalMatrix& m, const RatVec& v) {
  return crn::is_zero_vec(crn::matvec(m, v));
}

RationalMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, long lo = -3,
                             long hi = 3) {
  std::uniform_int_distribution<long> entry(lo, hi);
  RationalMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = rat(entry(rng));
  return m;
}

// --- Fourier-Motzkin elimination: an independent feasibility oracle ----------
//
// Decides whether constraints * x = 0 with x[i] >= 1 on the designated
// coordinates has a solution, by projecting the variables away one at a time.
// A different algorithm family from the simplex under test.

struct Ineq {
  RatVec a;    // coefficients
  Rational c;  // meaning: a . x >= c
};

void normalize(Ineq& q) {
  for (const Rational& v : q.a) {
    if (crn::sign(v) != 0) {
      Rational scale = abs(v);
      for (Rational& w : q.a) w /= scale;
      q.c /= scale;
      return;
    }
  }
}

std::string key_of(const Ineq& q) {
  std::string key;
  for (const Rational& v : q.a) key += crn::to_string(v) + ",";
  key += "|" + crn::to_string(q.c);
  return key;
}

bool fm_feasible(const RationalMatrix& constraints, const std::vector<int>& positive, int n) {
  std::vector<Ineq> sys;
  for (int i = 0; i < constraints.rows(); ++i) {
    RatVec row = constraints.row(i);
    RatVec neg;
    for (const Rational& v : row) neg.push_back(-v);
    sys.push_back({row, Rational(0)});
    sys.push_back({std::move(neg), Rational(0)});
  }
  for (int i : positive) {
    RatVec e(static_cast<std::size_t>(n), Rational(0));
    e[i] = 1;
    sys.push_back({std::move(e), Rational(1)});
  }

  for (int v = 0; v < n; ++v) {
    std::vector<Ineq> zero, plus, minus;
    for (Ineq& q : sys) {
      const int s = crn::sign(q.a[v]);
      (s == 0 ? zero : s > 0 ? plus : minus).push_back(std::move(q));
    }
    std::vector<Ineq> next = std::move(zero);
    for (const Ineq& p : plus)
      for (const Ineq& m : minus) {
        // From p: x_v has the lower bound (p.c - rest)/p.a[v]; from m the
        // upper bound. Lower <= upper rearranges (multiplying by the negative
        // product p.a[v]*m.a[v]) into this inequality without x_v.
        Ineq r;
        r.a.assign(static_cast<std::size_t>(n), Rational(0));
        for (int j = 0; j < n; ++j) r.a[j] = p.a[v] * m.a[j] - m.a[v] * p.a[j];
        r.c = p.a[v] * m.c - m.a[v] * p.c;
        next.push_back(std::move(r));
      }
    // Normalize and deduplicate to keep the projection from blowing up.
    std::set<std::string> seen;
    sys.clear();
    for (Ineq& q : next) {
      normalize(q);
      bool all_zero = true;
      for (const Rational& w : q.a) all_zero &= (crn::sign(w) == 0);
      if (all_zero) {
        if (crn::sign(q.c) > 0) return false;  // 0 >= positive: contradiction
        continue;
      }
      if (seen.insert(key_of(q)).second) sys.push_back(std::move(q));
    }
  }
  for (const Ineq& q : sys)
    if (crn::sign(q.c) > 0) return false;
  return true;
}

}  // namespace

TEST_CASE("rational helper canonicalizes integer pairs") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(crn::to_string(rat(2, 4)) == "1/2");
  CHECK(crn::to_string(rat(-6, 3)) == "-2");
  CHECK(crn::sign(rat(0)) == 0);
  CHECK(crn::sign(rat(-1, 7)) == -1);
  CHECK(crn::rat_pow(rat(2, 3), 3) == rat(8, 27));
  CHECK(crn::rat_pow(rat(5), 0) == 1);
}

TEST_CASE("rref of an identity is itself with all columns pivotal") {
  const RationalMatrix id = RationalMatrix::identity(3);
  const crn::RrefResult r = crn::rref(id);
  CHECK(r.pivot_cols == std::vector<int>{0, 1, 2});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(r.reduced.at(i, j) == (i == j ? 1 : 0));
}

TEST_CASE("rref collapses dependent rows") {
  const crn::RrefResult r = crn::rref(from_ints({{1, 1}, {2, 2}}, 2));
  CHECK(r.pivot_cols == std::vector<int>{0});
  CHECK(r.reduced.at(0, 0) == 1);
  CHECK(r.reduced.at(0, 1) == 1);
  CHECK(r.reduced.at(1, 0) == 0);
  CHECK(r.reduced.at(1, 1) == 0);
}

TEST_CASE("rref of an empty constraint matrix") {
  const crn::RrefResult r = crn::rref(RationalMatrix::from_rows({}, 4));
  CHECK(r.reduced.rows() == 0);
  CHECK(r.reduced.cols() == 4);
  CHECK(r.pivot_cols.empty());
  CHECK(crn::rank(RationalMatrix::from_rows({}, 4)) == 0);
}

TEST_CASE("rank unit cases") {
  CHECK(crn::rank(from_ints({{1, 0}, {0, 1}}, 2)) == 2);
  CHECK(crn::rank(from_ints({{1, 2}, {2, 4}}, 2)) == 1);
  CHECK(crn::rank(from_ints({{-2, 0, 2}}, 3)) == 1);
  CHECK(crn::rank(RationalMatrix(3, 0)) == 0);
}

TEST_CASE("kernel basis in the standard free-column parametrization") {
  const std::vector<RatVec> k = crn::kernel_basis(from_ints({{1, 0, -2}, {0, 1, 3}}, 3));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == ints({2, -3, 1}));
}

TEST_CASE("kernel of a single realizability row has dimension two") {
  const RationalMatrix m = from_ints({{-2, 0, 2}}, 3);
  const std::vector<RatVec> k = crn::kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const RatVec& v : k) CHECK(annihilates(m, v));
}

TEST_CASE("kernel degenerate shapes") {
  CHECK(crn::kernel_basis(RationalMatrix::identity(3)).empty());
  const std::vector<RatVec> free2 = crn::kernel_basis(RationalMatrix::from_rows({}, 2));
  REQUIRE(free2.size() == 2);
  CHECK(free2[0] == ints({1, 0}));
  CHECK(free2[1] == ints({0, 1}));
  CHECK(crn::kernel_basis(RationalMatrix(2, 0)).empty());
}

TEST_CASE("orthogonal complement unit cases") {
  const std::vector<RatVec> only_y = crn::orthogonal_complement_basis({ints({1, 0})}, 2);
  REQUIRE(only_y.size() == 1);
  CHECK(only_y[0] == ints({0, 1}));

  const std::vector<RatVec> all = crn::orthogonal_complement_basis({}, 2);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == ints({1, 0}));
  CHECK(all[1] == ints({0, 1}));

  // A full span leaves nothing orthogonal; downstream this acts as an empty
  // constraint block.
  CHECK(crn::orthogonal_complement_basis({ints({0, 2}), ints({-1, 1})}, 2).empty());
}

TEST_CASE("matmul, matvec and vstack agree on shapes and values") {
  const RationalMatrix a = from_ints({{1, 2}, {3, 4}}, 2);
  const RationalMatrix b = from_ints({{0, 1}, {1, 0}}, 2);
  const RationalMatrix ab = crn::matmul(a, b);
  CHECK(ab.at(0, 0) == 2);
  CHECK(ab.at(0, 1) == 1);
  CHECK(ab.at(1, 0) == 4);
  CHECK(ab.at(1, 1) == 3);

  CHECK(crn::matvec(a, ints({1, 1})) == ints({3, 7}));

  const RationalMatrix stacked = crn::vstack(a, b);
  CHECK(stacked.rows() == 4);
  CHECK(stacked.cols() == 2);
  CHECK(stacked.at(3, 0) == 1);

  // Empty blocks stack away silently, including dimensionless 0 x 0 tops.
  const RationalMatrix left = crn::vstack(RationalMatrix::from_rows({}, 0), a);
  CHECK(left.rows() == 2);
  CHECK(left.cols() == 2);
  const RationalMatrix right = crn::vstack(a, RationalMatrix::from_rows({}, 2));
  CHECK(right.rows() == 2);
}

TEST_CASE("span helpers") {
  const std::vector<RatVec> spanning = {ints({1, 0, 0}), ints({1, 1, 0})};
  CHECK(crn::span_rank(spanning, 3) == 2);
  CHECK(crn::in_span(ints({3, 2, 0}), spanning));
  CHECK_FALSE(crn::in_span(ints({0, 0, 1}), spanning));
  CHECK(crn::same_span(spanning, {ints({0, 1, 0}), ints({2, 0, 0})}, 3));
  CHECK_FALSE(crn::same_span(spanning, {ints({1, 0, 0})}, 3));
}

TEST_CASE("rank plus kernel dimension equals column count on random matrices") {
  std::mt19937_64 rng(20240811);
  std::uniform_int_distribution<int> rows_dist(0, 6), cols_dist(1, 7);
  for (int rep = 0; rep < 200; ++rep) {
    const int rows = rows_dist(rng), cols = cols_dist(rng);
    const RationalMatrix m = random_matrix(rng, rows, cols);
    const std::vector<RatVec> k = crn::kernel_basis(m);
    CHECK(crn::rank(m) + static_cast<int>(k.size()) == cols);
    for (const RatVec& v : k) CHECK(annihilates(m, v));
    // The kernel basis is itself independent.
    CHECK(crn::span_rank(k, cols) == static_cast<int>(k.size()));
  }
}

TEST_CASE("complement basis vectors are exactly orthogonal to their inputs") {
  std::mt19937_64 rng(20240812);
  std::uniform_int_distribution<int> count_dist(0, 4), dim_dist(1, 5);
  for (int rep = 0; rep < 100; ++rep) {
    const int ambient = dim_dist(rng);
    const int count = count_dist(rng);
    std::vector<RatVec> vectors;
    for (int i = 0; i < count; ++i) vectors.push_back(random_matrix(rng, 1, ambient).row(0));
    const std::vector<RatVec> comp = crn::orthogonal_complement_basis(vectors, ambient);
    CHECK(crn::span_rank(vectors, ambient) + static_cast<int>(comp.size()) == ambient);
    for (const RatVec& c : comp)
      for (const RatVec& v : vectors) CHECK(crn::sign(crn::dot(c, v)) == 0);
  }
}

TEST_CASE("positive kernel feasibility unit cases") {
  // x0 + x1 = 0 with both coordinates >= 1 is a contradiction.
  const crn::FeasibilityCertificate sum =
      crn::positive_kernel_feasible(from_ints({{1, 1}}, 2), {0, 1});
  CHECK_FALSE(sum.feasible);
  CHECK_FALSE(sum.witness.has_value());

  // No constraints at all: the all-ones point works.
  const crn::FeasibilityCertificate open =
      crn::positive_kernel_feasible(RationalMatrix::from_rows({}, 2), {0, 1});
  REQUIRE(open.feasible);
  REQUIRE(open.witness.has_value());
  CHECK(*open.witness == ints({1, 1}));

  // Conservation with a sign flip is satisfiable on the diagonal.
  const crn::FeasibilityCertificate flow =
      crn::positive_kernel_feasible(from_ints({{1, -1}}, 2), {0, 1});
  REQUIRE(flow.feasible);
  CHECK(crn::verify_positive_kernel_witness(from_ints({{1, -1}}, 2), {0, 1}, *flow.witness));

  // A free coordinate may go negative to balance a designated one.
  const crn::FeasibilityCertificate slack =
      crn::positive_kernel_feasible(from_ints({{1, 2}}, 2), {1});
  REQUIRE(slack.feasible);
  CHECK((*slack.witness)[1] >= 1);
  CHECK(crn::verify_positive_kernel_witness(from_ints({{1, 2}}, 2), {1}, *slack.witness));
}

TEST_CASE("witness verification rejects wrong vectors") {
  const RationalMatrix m = from_ints({{1, -1}}, 2);
  CHECK(crn::verify_positive_kernel_witness(m, {0, 1}, ints({2, 2})));
  CHECK_FALSE(crn::verify_positive_kernel_witness(m, {0, 1}, ints({2, 1})));   // not in kernel
  CHECK_FALSE(crn::verify_positive_kernel_witness(m, {0, 1}, ints({0, 0})));   // below 1
  CHECK_FALSE(crn::verify_positive_kernel_witness(m, {0, 1}, ints({2})));      // wrong length
}

TEST_CASE("simplex agrees with Fourier-Motzkin on random homogeneous systems") {
  std::mt19937_64 rng(20240813);
  std::uniform_int_distribution<int> rows_dist(1, 4), cols_dist(2, 6);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int rep = 0; rep < 150; ++rep) {
    const int rows = rows_dist(rng), cols = cols_dist(rng);
    const RationalMatrix m = random_matrix(rng, rows, cols);
    std::vector<int> positive;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int j = 0; j < cols; ++j)
      if (coin(rng)) positive.push_back(j);
    if (positive.empty()) positive.push_back(0);

    const crn::FeasibilityCertificate cert = crn::positive_kernel_feasible(m, positive);
    const bool oracle = fm_feasible(m, positive, cols);
    CHECK(cert.feasible == oracle);
    if (cert.feasible) {
      ++feasible_seen;
      REQUIRE(cert.witness.has_value());
      CHECK(crn::verify_positive_kernel_witness(m, positive, *cert.witness));
    } else {
      ++infeasible_seen;
      CHECK_FALSE(cert.witness.has_value());
    }
  }
  // The sample must exercise both outcomes to mean anything.
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("simplex terminates and self-verifies on larger random systems") {
  std::mt19937_64 rng(20240814);
  for (int rep = 0; rep < 20; ++rep) {
    const RationalMatrix m = random_matrix(rng, 12, 20, -4, 4);
    std::vector<int> positive;
    for (int j = 0; j < 20; j += 2) positive.push_back(j);
    const crn::FeasibilityCertificate cert = crn::positive_kernel_feasible(m, positive);
    if (cert.feasible) CHECK(crn::verify_positive_kernel_witness(m, positive, *cert.witness));
  }
}

#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bochner/exterior.hpp"
#include "oracle.hpp"

using namespace bochner;

namespace {

Form e(int q, std::initializer_list<int> idx, double c = 1.0) { return Form::monomial(q, MultiIndex(idx), c); }

bool same(const Form& a, const Form& b, double tol = 0.0) {
  return a.q() == b.q() && a.degree() == b.degree() && (a - b).max_abs() <= tol;
}

}  // namespace

TEST_CASE("rank of pairs in q=4") {
  CHECK(rank_of({1, 2}, 4) == 0);
  CHECK(rank_of({1, 3}, 4) == 1);
  CHECK(rank_of({3, 4}, 4) == 5);
  CHECK(unrank_of(5, 2, 4) == MultiIndex{3, 4});
}

TEST_CASE("rank round trip is exhaustive for q up to 10") {
  for (int q = 0; q <= 10; ++q) {
    for (int p = 0; p <= q; ++p) {
      const auto sets = oracle::subsets(q, p);
      REQUIRE(static_cast<std::int64_t>(sets.size()) == binomial(q, p));
      const Basis basis(q, p);
      for (std::size_t r = 0; r < sets.size(); ++r) {
        std::vector<int> one_based;
        for (int x : sets[r]) one_based.push_back(x + 1);
        const MultiIndex idx(one_based);
        const auto rank = static_cast<std::int64_t>(r);
        if (rank_of(idx, q) != rank || !(unrank_of(rank, p, q) == idx) ||
            basis.rank(idx.mask()) != static_cast<int>(r) || mask_rank(idx.mask(), q) != rank) {
          FAIL("round trip broke at q=" << q << " idx=" << idx.to_string());
        }
      }
    }
  }
}

TEST_CASE("invalid multi-indices are rejected") {
  CHECK_THROWS_AS(MultiIndex({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(rank_of({1, 5}, 4), std::invalid_argument);
  CHECK_THROWS_AS(unrank_of(6, 2, 4), std::invalid_argument);
}

TEST_CASE("wedge examples") {
  CHECK(same(wedge(Form::e(3, 1), e(3, {2, 3})), e(3, {1, 2, 3})));
  CHECK(same(wedge(Form::e(3, 2), e(3, {1, 3})), e(3, {1, 2, 3}, -1.0)));
  CHECK(wedge(Form::e(3, 1), e(3, {1, 2})).is_zero());
  CHECK_THROWS_AS(wedge(e(3, {1, 2}), e(3, {1, 3})), std::invalid_argument);
  CHECK_THROWS_AS(wedge(Form::e(3, 1), Form::e(4, 1)), std::invalid_argument);
}

TEST_CASE("interior examples") {
  CHECK(same(interior(Form::e(3, 2), e(3, {1, 2, 3})), e(3, {1, 3}, -1.0)));
  CHECK(same(interior(Form::e(2, 1), e(2, {1, 2})), Form::e(2, 2)));
  CHECK(interior(Form::e(4, 4), e(4, {1, 2})).is_zero());
  const Form c = interior(Form::e(4, 1), Form::scalar(4, 3.0));
  CHECK(c.degree() == 0);
  CHECK(c.is_zero());
  CHECK_THROWS_AS(interior(e(4, {1, 2}), e(4, {1, 2})), std::invalid_argument);
}

TEST_CASE("inner product examples") {
  CHECK(inner(e(4, {1, 2}), e(4, {1, 2})) == 1.0);
  CHECK(inner(e(4, {1, 2}), e(4, {1, 3})) == 0.0);
  CHECK(inner(2.0 * Form::e(4, 1) + Form::e(4, 3), Form::e(4, 1)) == 2.0);
  CHECK_THROWS_AS(inner(Form::e(4, 1), e(4, {1, 2})), std::invalid_argument);
}

TEST_CASE("norms of low and top degree forms") {
  CHECK(Form::scalar(5, -3.0).norm() == 3.0);
  CHECK(Form(5, 5).dim() == 1);
  CHECK(Form(5, 0).dim() == 1);
  const Form w(3, 2, {1.0, 2.0, 2.0});
  CHECK(w.norm_squared() == 9.0);
}

TEST_CASE("wedge is associative and graded anticommutative") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = 2 + trial % 7;
    std::uniform_int_distribution<int> deg(0, q);
    const int p1 = deg(rng), p2 = std::uniform_int_distribution<int>(0, q - p1)(rng);
    const int p3 = std::uniform_int_distribution<int>(0, q - p1 - p2)(rng);
    const Form a = oracle::random_int_form(rng, q, p1);
    const Form b = oracle::random_int_form(rng, q, p2);
    const Form c = oracle::random_int_form(rng, q, p3);
    CHECK(same(wedge(wedge(a, b), c), wedge(a, wedge(b, c))));
    const double s = (p1 * p2) % 2 == 0 ? 1.0 : -1.0;
    CHECK(same(wedge(a, b), s * wedge(b, a)));
  }
}

TEST_CASE("wedge agrees with the blade oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int q = 2 + trial % 5;
    const int p1 = std::uniform_int_distribution<int>(0, q)(rng);
    const int p2 = std::uniform_int_distribution<int>(0, q - p1)(rng);
    const Form a = oracle::random_int_form(rng, q, p1);
    const Form b = oracle::random_int_form(rng, q, p2);
    // the top-degree part of the Clifford product of disjoint blades is the wedge
    const auto full = oracle::product(oracle::embed(a), oracle::embed(b), q);
    CHECK(same(wedge(a, b), oracle::extract(full, q, p1 + p2)));
  }
}

TEST_CASE("interior is adjoint to left wedge and a graded derivation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = 2 + trial % 7;
    const int p = std::uniform_int_distribution<int>(0, q - 1)(rng);
    const Form x = oracle::random_form(rng, q, 1);
    const Form a = oracle::random_form(rng, q, p);
    const Form b = oracle::random_form(rng, q, p + 1);
    CHECK(inner(wedge(x, a), b) == doctest::Approx(inner(a, interior(x, b))).epsilon(1e-12));

    const int p1 = std::uniform_int_distribution<int>(0, q)(rng);
    const int p2 = std::uniform_int_distribution<int>(0, q - p1)(rng);
    const Form u = oracle::random_int_form(rng, q, p1);
    const Form v = oracle::random_int_form(rng, q, p2);
    const Form xi = oracle::random_int_form(rng, q, 1);
    const double s = p1 % 2 == 0 ? 1.0 : -1.0;
    if (p1 + p2 == 0) continue;
    Form rhs(q, p1 + p2 - 1);
    if (p1 >= 1) rhs += wedge(interior(xi, u), v);
    if (p2 >= 1) rhs += s * wedge(u, interior(xi, v));
    CHECK(same(interior(xi, wedge(u, v)), rhs));
  }
}

TEST_CASE("exterior power of an orthogonal map is orthogonal with determinant top entry") {
  std::mt19937_64 rng(14);
  const Eigen::MatrixXd o = oracle::random_orthogonal(rng, 5);
  for (int p = 0; p <= 5; ++p) {
    const Eigen::MatrixXd l = exterior_power(o, p);
    CHECK((l.transpose() * l - Eigen::MatrixXd::Identity(l.rows(), l.cols())).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(exterior_power(o, 5)(0, 0) == doctest::Approx(o.determinant()).epsilon(1e-12));
}

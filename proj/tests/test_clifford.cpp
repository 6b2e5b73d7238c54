#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bochner/clifford.hpp"
#include "oracle.hpp"

using namespace bochner;

namespace {

Form e(int q, std::initializer_list<int> idx, double c = 1.0) { return Form::monomial(q, MultiIndex(idx), c); }

oracle::Algebra flatten(const Multivector& mv) {
  oracle::Algebra a(std::size_t{1} << mv.q(), 0.0);
  for (const auto& [p, f] : mv.parts()) {
    const auto part = oracle::embed(f);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += part[k];
  }
  return a;
}

double distance(const Multivector& mv, const oracle::Algebra& ref) {
  return oracle::max_abs_diff(flatten(mv), ref);
}

double distance(const Multivector& a, const Multivector& b) {
  return oracle::max_abs_diff(flatten(a), flatten(b));
}

}  // namespace

TEST_CASE("left multiplication examples") {
  CHECK(distance(clifford_left(Form::e(2, 1), e(2, {1, 2})), oracle::embed(-1.0 * Form::e(2, 2))) == 0.0);
  CHECK(distance(clifford_left(Form::e(3, 3), e(3, {1, 2})), oracle::embed(e(3, {1, 2, 3}))) == 0.0);
  const Multivector sq = clifford_left(Form::e(3, 1), Form::e(3, 1));
  CHECK(sq.component(0)[0] == -1.0);
  CHECK(sq.concentrated_in(0));
}

TEST_CASE("right multiplication and anticommutation examples") {
  CHECK(distance(clifford_right(e(2, {1, 2}), Form::e(2, 1)), oracle::embed(Form::e(2, 2))) == 0.0);
  const Multivector anti = clifford_left(Form::e(3, 1), Form::e(3, 2)) + clifford_left(Form::e(3, 2), Form::e(3, 1));
  CHECK(anti.max_abs() == 0.0);
  const Multivector twice = clifford_left(Form::e(3, 1), Form::e(3, 1)) + clifford_left(Form::e(3, 1), Form::e(3, 1));
  CHECK(twice.component(0)[0] == -2.0);
}

TEST_CASE("form products") {
  const Multivector unit(Form::scalar(3, 1.0));
  CHECK(distance(clifford_product(e(3, {1, 2}), unit), oracle::embed(e(3, {1, 2}))) == 0.0);
  const Multivector sq = clifford_product(e(3, {1, 2}), Multivector(e(3, {1, 2})));
  CHECK(distance(sq, oracle::embed(Form::scalar(3, -1.0))) == 0.0);
  CHECK(distance(clifford_product(Form::e(3, 1), Multivector(e(3, {2, 3}))), oracle::embed(e(3, {1, 2, 3}))) == 0.0);
}

TEST_CASE("bracket examples") {
  CHECK(distance(lie_bracket(e(3, {1, 2}), Form::e(3, 1)), oracle::embed(2.0 * Form::e(3, 2))) == 0.0);
  CHECK(lie_bracket(e(4, {1, 2}), e(4, {3, 4})).max_abs() == 0.0);
  const Form w = e(4, {1, 3}, 2.0) + e(4, {2, 4}, -1.0);
  CHECK(lie_bracket(w, w).max_abs() == 0.0);

  CHECK((bracket_two_form(e(3, {1, 2}), e(3, {1, 3})) - e(3, {2, 3}, 2.0)).max_abs() == 0.0);
  CHECK((bracket_two_form(e(3, {1, 2}), Form::e(3, 1)) - 2.0 * Form::e(3, 2)).max_abs() == 0.0);
  CHECK(bracket_two_form(e(3, {1, 2}), Form::e(3, 3)).is_zero());
  CHECK_THROWS_AS(bracket_two_form(Form::e(3, 1), Form::e(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(clifford_left(e(3, {1, 2}), Form::e(3, 1)), std::invalid_argument);
}

TEST_CASE("products agree with the blade oracle for q up to 5") {
  std::mt19937_64 rng(21);
  for (int q = 1; q <= 5; ++q) {
    for (int pa = 0; pa <= q; ++pa) {
      for (int pw = 0; pw <= q; ++pw) {
        const Form a = oracle::random_int_form(rng, q, pa);
        const Form w = oracle::random_int_form(rng, q, pw);
        const auto ref = oracle::product(oracle::embed(a), oracle::embed(w), q);
        CHECK(distance(clifford_product(a, Multivector(w)), ref) == 0.0);
        CHECK(distance(lie_bracket(a, w), oracle::bracket(oracle::embed(a), oracle::embed(w), q)) == 0.0);
      }
    }
  }
}

TEST_CASE("left multiplication by e_k matches the signed permutation matrices") {
  for (int q = 1; q <= 5; ++q) {
    for (int k = 0; k < q; ++k) {
      const Eigen::MatrixXd ref = oracle::left_matrix(q, k);
      for (int p = 0; p <= q; ++p) {
        for (const auto& s : oracle::subsets(q, p)) {
          std::vector<int> one_based;
          for (int x : s) one_based.push_back(x + 1);
          const Form mono = Form::monomial(q, MultiIndex(one_based));
          const auto col = ref.col(static_cast<int>(oracle::blade_of(s)));
          const oracle::Algebra expect(col.data(), col.data() + col.size());
          CHECK(distance(clifford_left(Form::e(q, k + 1), mono), expect) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("anticommutation on random vectors") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = 1 + trial % 8;
    const Form x = oracle::random_int_form(rng, q, 1);
    const Form y = oracle::random_int_form(rng, q, 1);
    Multivector lhs = clifford_left(x, y) + clifford_left(y, x);
    lhs += Form::scalar(q, 2.0 * inner(x, y));
    CHECK(lhs.max_abs() == 0.0);
    CHECK(distance(clifford_right(x, y), clifford_product(x, Multivector(y))) == 0.0);
    const int p = std::uniform_int_distribution<int>(0, q)(rng);
    const Form w = oracle::random_int_form(rng, q, p);
    CHECK(distance(clifford_right(w, x), oracle::product(oracle::embed(w), oracle::embed(x), q)) == 0.0);
  }
}

TEST_CASE("bracket with a 2-form keeps the degree") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const int q = 2 + trial % 7;
    const int p = std::uniform_int_distribution<int>(0, q)(rng);
    const Form psi = oracle::random_form(rng, q, 2);
    const Form w = oracle::random_form(rng, q, p);
    const Multivector full = lie_bracket(psi, w);
    CHECK(full.concentrated_in(p, 1e-10));
    CHECK((full.component(p) - bracket_two_form(psi, w)).max_abs() <= 1e-10);
  }
}

TEST_CASE("bracket of a 2-form against a wedge") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = 2 + trial % 7;
    const int p = std::uniform_int_distribution<int>(0, q - 1)(rng);
    const Form psi = oracle::random_form(rng, q, 2);
    const Form x = oracle::random_form(rng, q, 1);
    const Form w = oracle::random_form(rng, q, p);
    const Multivector lhs = lie_bracket(psi, wedge(x, w));
    Multivector rhs = clifford_left(x, lie_bracket(psi, w));
    rhs += 2.0 * clifford_product(interior(x, psi), Multivector(w));
    if (p > 0) rhs += lie_bracket(psi, interior(x, w));
    CHECK(distance(lhs, rhs) <= 1e-10);
  }
}

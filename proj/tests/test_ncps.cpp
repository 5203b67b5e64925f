#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace bgi;
using namespace bgi::testing;

TEST_CASE("state evaluation") {
  std::mt19937_64 rng(1);
  const Vector xi = random_unit_vector(3, rng);
  const auto s = AlgebraState::vector_state(xi);
  CHECK(near(s.apply(Matrix::Identity(3, 3)), 1.0));
  CHECK(near(s.apply(xi * xi.adjoint()), 1.0));
  const auto tr = AlgebraState::trace_state(2);
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  CHECK(near(tr.apply(d), 0.5));
  CHECK_THROWS_AS(tr.apply(Matrix::Identity(3, 3)), Error);
  CHECK_THROWS_AS(AlgebraState::vector_state(Vector::Ones(2)), Error);
}

TEST_CASE("word moments") {
  const auto tr = AlgebraState::trace_state(2);
  CHECK(near(word_moment(tr, {}), 1.0));
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(2, rng);
  CHECK(near(word_moment(tr, {a}), tr.apply(a)));
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1(0, 0) = 2.0;
  d1(1, 1) = Complex(0, 1);
  d2(0, 0) = -1.0;
  d2(1, 1) = 3.0;
  CHECK(near(word_moment(tr, {d1, d2}), word_moment(tr, {d2, d1})));
}

TEST_CASE("random algebras are reproducible") {
  const auto a = random_algebra(3, 2, 42);
  const auto b = random_algebra(3, 2, 42);
  const auto c = random_algebra(3, 2, 43);
  CHECK(a.elements[0] == b.elements[0]);
  CHECK(a.state.vector == b.state.vector);
  CHECK(a.elements[0] != c.elements[0]);
  const auto h = random_algebra(4, 3, 7, true);
  for (const auto& m : h.elements) CHECK(m == m.adjoint());
  for (const auto& m : a.elements) CHECK(m.cwiseAbs().maxCoeff() <= std::sqrt(2.0));
  CHECK_THROWS_AS(random_algebra(17, 1, 0), Error);
}

TEST_CASE("positivity and multilinearity") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto s = AlgebraState::vector_state(random_unit_vector(3, rng));
    const Matrix m = random_matrix(3, rng);
    const Complex pos = s.apply(m.adjoint() * m);
    CHECK(pos.real() >= -1e-12);
    CHECK(std::abs(pos.imag()) < 1e-12);
    const Matrix a = random_matrix(3, rng), b = random_matrix(3, rng), x = random_matrix(3, rng);
    const Complex alpha(0.3, -1.2);
    CHECK(near(word_moment(s, {x, a + alpha * b, x}), word_moment(s, {x, a, x}) + alpha * word_moment(s, {x, b, x})));
  }
}

TEST_CASE("moment problems validate their dimensions") {
  MomentProblem p{pair_graph(PairKind::Free), {0, 1}, {AlgebraState::trace_state(2), AlgebraState::trace_state(3)},
                  {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}};
  CHECK_THROWS_AS(p.validate(), Error);
  p.elements[1] = Matrix::Identity(3, 3);
  CHECK_NOTHROW(p.validate());
  CHECK(near(problem_functional(p)({0}), 1.0));
}

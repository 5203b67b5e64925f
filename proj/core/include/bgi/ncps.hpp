#pragma once

#include <functional>
#include <random>
#include <vector>

#include "bgi/bigraph.hpp"
#include "bgi/common.hpp"

namespace bgi {

// phi evaluated on the ordered product of the elements at the given
// (ascending) positions of some tuple.
using MomentFunctional = std::function<Complex(const std::vector<std::size_t>&)>;

enum class StateKind { Vector, Trace };

// A state on M_d: either <xi, A xi> for a unit vector xi or the normalized trace.
struct AlgebraState {
  std::size_t dim = 1;
  StateKind kind = StateKind::Vector;
  Vector vector;  // unit vector when kind == Vector

  static AlgebraState vector_state(const Vector& xi);
  static AlgebraState trace_state(std::size_t dim);
  Complex apply(const Matrix& a) const;
};

// Elements a_1..a_k with a_j in the algebra of vertex word[j].
struct MomentProblem {
  Bigraph graph;
  Coloring word;
  std::vector<AlgebraState> states;  // one per vertex
  std::vector<Matrix> elements;      // one per index

  void validate() const;
};

// phi(positions) = state_v(a_{p1} ... a_{pm}); positions must share a color.
MomentFunctional problem_functional(const MomentProblem& problem);
// Same, for an arbitrary tuple of matrices evaluated in one state.
MomentFunctional tuple_functional(const AlgebraState& state, const std::vector<Matrix>& tuple);
Matrix ordered_product(const std::vector<Matrix>& elements, const std::vector<std::size_t>& positions);
// State of the ordered product of a list of elements; the empty word gives 1.
Complex word_moment(const AlgebraState& state, const std::vector<Matrix>& elements);

Matrix random_matrix(std::size_t dim, std::mt19937_64& rng);
Vector random_unit_vector(std::size_t dim, std::mt19937_64& rng);
// Random elements and a random vector state for one vertex algebra M_dim.
struct RandomAlgebra {
  AlgebraState state;
  std::vector<Matrix> elements;
};
// Entries bounded by 1 in modulus per component; `hermitian` symmetrizes.
RandomAlgebra random_algebra(std::size_t dim, std::size_t count, std::uint64_t seed, bool hermitian = false);

// Random bigraph on n vertices named "v1".."vn" with every pair kind equally likely.
Bigraph random_bigraph(std::size_t n, std::mt19937_64& rng);
MomentProblem random_problem(const Bigraph& g, std::size_t k, const std::vector<std::size_t>& dims,
                             std::mt19937_64& rng);

}  // namespace bgi

#pragma once

#include <map>
#include <vector>

#include "bgi/compat.hpp"
#include "bgi/ncps.hpp"

namespace bgi {

using Word = std::vector<Vertex>;

// Permissible: for positions i1 < i2, (w[i2], w[i1]) lies in E1.
bool is_permissible(const Bigraph& g, const Word& w);
// Reduced: between two equal letters there is a different letter that is not
// tensor related to them.
bool is_reduced(const Bigraph& g, const Word& w);
// Words are equivalent when they differ by swaps of adjacent tensor-related letters.
std::vector<Word> equivalence_class(const Bigraph& g, const Word& w);
bool equivalent(const Bigraph& g, const Word& a, const Word& b);
// Lexicographically smallest word of the class (vertex insertion order).
Word representative(const Bigraph& g, const Word& w);
// For equivalent words: position i of `from` goes to the position in `to`
// holding the same occurrence of the same letter.
std::vector<std::size_t> occurrence_map(const Word& from, const Word& to);

// Tensor on the word `from` (row-major, first letter most significant)
// reordered onto the equivalent word `to`.
Vector permute_tensor(const Vector& t, const std::vector<std::size_t>& dims_from, const std::vector<std::size_t>& map);

using StateVector = std::map<Word, Vector>;
double distance(const StateVector& a, const StateVector& b);

// Truncated product space: direct sum over representatives of permissible
// reduced words of tensor products of the reduced spaces xi_v^perp. Trace
// states are purified on C^d (x) C^d with the maximally entangled vector.
class ProductSpace {
 public:
  static ProductSpace build(const Bigraph& g, const std::vector<AlgebraState>& states, std::size_t max_length);

  const Bigraph& graph() const { return graph_; }
  const std::vector<Word>& words() const { return words_; }
  std::size_t max_length() const { return max_length_; }
  std::size_t reduced_dim(Vertex v) const { return reduced_dims_[v]; }
  std::size_t word_dim(const Word& w) const;
  std::vector<std::size_t> word_dims(const Word& w) const;
  std::size_t total_dim() const;
  const AlgebraState& state(Vertex v) const { return states_[v]; }

  // Matrix of a in the adapted orthonormal basis (xi_v first) of the pointed space.
  Matrix adapted(Vertex v, const Matrix& a) const;
  // The vacuum vector: the scalar 1 on the empty word.
  StateVector vacuum() const;

  // Action of lambda_v on an adapted-basis matrix.
  StateVector apply_adapted(Vertex v, const Matrix& adapted_a, const StateVector& x) const;

 private:
  struct Transition {
    int kind = 3;          // 1: v w admissible, 2: v movable to the front, 3: zero
    bool overflow = false;  // kind 1 whose target exceeds the truncation length
    Word target;           // kind 1: r(v w); kind 2: w'' with w ~ v w''
    std::vector<std::size_t> map;  // kind 1: v w -> target; kind 2: v w'' -> w
  };
  const Transition& transition(Vertex v, const Word& w) const;

  Bigraph graph_;
  std::vector<AlgebraState> states_;
  std::vector<std::size_t> reduced_dims_;
  std::vector<Matrix> basis_;  // unitary with xi_v as first column (purified space)
  std::size_t max_length_ = 0;
  std::vector<Word> words_;
  std::map<std::pair<Vertex, Word>, Transition> transitions_;
};

StateVector apply_lambda(const ProductSpace& space, Vertex v, const Matrix& a, const StateVector& x);
// <xi, lambda(a_1) ... lambda(a_k) xi> with a_k applied first.
Complex vacuum_moment(const ProductSpace& space, const Coloring& c, const std::vector<Matrix>& a);

// Both sides of the unfinished-moment identity. `c`, `a` and `steps` are in
// application order (index 0 acts first). The operator route applies the
// compressed pieces {P,Q} a {P,Q}; the formula route builds the tensor of
// Q-compressed block products times Boolean cumulants of finished blocks.
struct UnfinishedActionResult {
  StateVector operator_route;
  StateVector formula_route;
};
UnfinishedActionResult unfinished_action(const ProductSpace& space, const Coloring& c, const std::vector<Matrix>& a,
                                         const std::vector<Step>& steps);

}  // namespace bgi

#include "bgi/ncps.hpp"

namespace bgi {

AlgebraState AlgebraState::vector_state(const Vector& xi) {
  const double norm = xi.norm();
  if (xi.size() == 0 || std::abs(norm - 1.0) > 1e-9) throw Error(ErrorCode::DimMismatch, "state vector must be a unit vector");
  AlgebraState s;
  s.dim = static_cast<std::size_t>(xi.size());
  s.kind = StateKind::Vector;
  s.vector = xi;
  return s;
}

AlgebraState AlgebraState::trace_state(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::DimMismatch, "algebra dimension must be positive");
  AlgebraState s;
  s.dim = dim;
  s.kind = StateKind::Trace;
  return s;
}

Complex AlgebraState::apply(const Matrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim) {
    throw Error(ErrorCode::DimMismatch, "element dimension differs from its algebra");
  }
  if (kind == StateKind::Trace) return a.trace() / static_cast<double>(dim);
  return vector.dot(a * vector);  // dot conjugates the left argument
}

void MomentProblem::validate() const {
  if (states.size() != graph.size()) throw Error(ErrorCode::ArityMismatch, "one state per vertex required");
  if (elements.size() != word.size()) throw Error(ErrorCode::ArityMismatch, "one element per word index required");
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (word[j] >= graph.size()) throw Error(ErrorCode::UnknownVertex, "word letter outside the bigraph");
    const std::size_t d = states[word[j]].dim;
    if (static_cast<std::size_t>(elements[j].rows()) != d || static_cast<std::size_t>(elements[j].cols()) != d) {
      throw Error(ErrorCode::DimMismatch, "element " + std::to_string(j + 1) + " has the wrong dimension");
    }
  }
}

Matrix ordered_product(const std::vector<Matrix>& elements, const std::vector<std::size_t>& positions) {
  Matrix m = elements[positions.front()];
  for (std::size_t i = 1; i < positions.size(); ++i) m = m * elements[positions[i]];
  return m;
}

Complex word_moment(const AlgebraState& state, const std::vector<Matrix>& elements) {
  Matrix m = Matrix::Identity(static_cast<Eigen::Index>(state.dim), static_cast<Eigen::Index>(state.dim));
  for (const auto& a : elements) m = m * a;
  return state.apply(m);
}

MomentFunctional problem_functional(const MomentProblem& problem) {
  problem.validate();
  return [&problem](const std::vector<std::size_t>& positions) {
    const Vertex v = problem.word[positions.front()];
    for (std::size_t p : positions) {
      if (problem.word[p] != v) throw Error(ErrorCode::NotMonochromatic, "moment of a mixed-color tuple");
    }
    return problem.states[v].apply(ordered_product(problem.elements, positions));
  };
}

MomentFunctional tuple_functional(const AlgebraState& state, const std::vector<Matrix>& tuple) {
  return [state, tuple](const std::vector<std::size_t>& positions) {
    return state.apply(ordered_product(tuple, positions));
  };
}

Matrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

Vector random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(n(rng), n(rng));
  return v / v.norm();
}

RandomAlgebra random_algebra(std::size_t dim, std::size_t count, std::uint64_t seed, bool hermitian) {
  if (dim == 0 || dim > kMaxRandomAlgebraDim) throw Error(ErrorCode::SizeGuard, "random algebra dimension must be in 1..16");
  std::mt19937_64 rng(seed);
  RandomAlgebra out;
  out.state = AlgebraState::vector_state(random_unit_vector(dim, rng));
  for (std::size_t i = 0; i < count; ++i) {
    Matrix m = random_matrix(dim, rng);
    if (hermitian) m = ((m + m.adjoint()) * 0.5).eval();
    out.elements.push_back(m);
  }
  return out;
}

Bigraph random_bigraph(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v + 1));
  std::map<std::pair<std::string, std::string>, PairKind> kinds;
  std::uniform_int_distribution<int> pick(0, 4);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = v + 1; w < n; ++w) kinds[{names[v], names[w]}] = static_cast<PairKind>(pick(rng));
  }
  return from_pairwise(names, kinds);
}

MomentProblem random_problem(const Bigraph& g, std::size_t k, const std::vector<std::size_t>& dims,
                             std::mt19937_64& rng) {
  if (dims.size() != g.size()) throw Error(ErrorCode::ArityMismatch, "one dimension per vertex required");
  MomentProblem p;
  p.graph = g;
  std::uniform_int_distribution<std::size_t> letter(0, g.size() - 1);
  for (std::size_t j = 0; j < k; ++j) p.word.push_back(letter(rng));
  for (std::size_t v = 0; v < g.size(); ++v) p.states.push_back(AlgebraState::vector_state(random_unit_vector(dims[v], rng)));
  for (std::size_t j = 0; j < k; ++j) p.elements.push_back(random_matrix(dims[p.word[j]], rng));
  return p;
}

}  // namespace bgi

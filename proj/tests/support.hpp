#pragma once

// Independent oracles shared by the unit and acceptance tests. Nothing here
// calls the cumulant or compatibility code of the library, so agreement with
// the library is a genuine cross-check.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "bgi/bgi.hpp"

namespace bgi::testing {

inline Bigraph pair_graph(PairKind kind) {
  return from_pairwise({"v", "w"}, {{{"v", "w"}, kind}});
}

inline bool near(Complex a, Complex b, double rel = 1e-9) { return close(a, b, Tolerance{rel, 1e-12}); }

// Brute force over all partitions of [n]: the RGS enumeration of the library
// is not used so the oracle also covers enumeration.
inline void brute_partitions(std::size_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> labels(n, 0), maxima(n, 0);
  if (n == 0) {
    visit(labels);
    return;
  }
  while (true) {
    visit(labels);
    std::size_t i = n - 1;
    while (i > 0 && labels[i] == maxima[i - 1] + 1) --i;
    if (i == 0) return;
    ++labels[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) labels[j] = 0;
      maxima[j] = std::max(maxima[j - 1], labels[j]);
    }
  }
}

// Non-crossing test on labels straight from the definition (a < b < c < d,
// a ~ c, b ~ d, a !~ b).
inline bool labels_noncrossing(const std::vector<int>& l) {
  const std::size_t n = l.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (l[a] == l[c] && l[b] == l[d] && l[a] != l[b]) return false;
  return true;
}

inline std::vector<std::vector<std::size_t>> label_blocks(const std::vector<int>& l) {
  int m = 0;
  for (int x : l) m = std::max(m, x + 1);
  std::vector<std::vector<std::size_t>> blocks(static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < l.size(); ++i) blocks[static_cast<std::size_t>(l[i])].push_back(i);
  return blocks;
}

// Free cumulants of a single algebra by the recursion phi(S) = sum over NC
// partitions of S of the product of cumulants, solved for the top block.
class FreeCumulantOracle {
 public:
  explicit FreeCumulantOracle(std::function<Complex(const std::vector<std::size_t>&)> phi) : phi_(std::move(phi)) {}

  Complex cumulant(const std::vector<std::size_t>& pos) {
    auto it = memo_.find(pos);
    if (it != memo_.end()) return it->second;
    Complex value = phi_(pos);
    brute_partitions(pos.size(), [&](const std::vector<int>& l) {
      if (!labels_noncrossing(l)) return;
      auto blocks = label_blocks(l);
      if (blocks.size() == 1) return;
      Complex prod = 1;
      for (const auto& b : blocks) {
        std::vector<std::size_t> sub;
        for (std::size_t i : b) sub.push_back(pos[i]);
        prod *= cumulant(sub);
      }
      value -= prod;
    });
    memo_[pos] = value;
    return value;
  }

 private:
  std::function<Complex(const std::vector<std::size_t>&)> phi_;
  std::map<std::vector<std::size_t>, Complex> memo_;
};

// Joint moment of freely independent algebras: sum over non-crossing
// partitions with monochromatic blocks of free cumulants.
inline Complex free_oracle_moment(const Coloring& c, const std::function<Complex(const std::vector<std::size_t>&)>& phi) {
  FreeCumulantOracle oracle(phi);
  Complex total = 0;
  brute_partitions(c.size(), [&](const std::vector<int>& l) {
    if (!labels_noncrossing(l)) return;
    auto blocks = label_blocks(l);
    for (const auto& b : blocks)
      for (std::size_t i : b)
        if (c[i] != c[b[0]]) return;
    Complex prod = 1;
    for (const auto& b : blocks) prod *= oracle.cumulant(b);
    total += prod;
  });
  return total;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Explicit tensor-product model on (x)_v C^{d_v}: a at vertex i acts as a on
// slot i, the identity on slot j when (j, i) is in E1 and the projection onto
// xi_j otherwise. Its vacuum moments realize Boolean, monotone, anti-monotone
// and tensor pairs, i.e. every bigraph with E2 = E1 n E1^T minus the diagonal.
inline Complex tensor_model_moment(const Bigraph& g, const Coloring& c, const std::vector<AlgebraState>& states,
                                   const std::vector<Matrix>& elements) {
  const std::size_t n = g.size();
  std::vector<Vector> xi(n);
  for (Vertex v = 0; v < n; ++v) {
    if (states[v].kind == StateKind::Vector) {
      xi[v] = states[v].vector;
    } else {
      throw std::logic_error("tensor model oracle takes vector states");
    }
  }
  auto lift = [&](Vertex i, const Matrix& a) {
    Matrix out = Matrix::Identity(1, 1);
    for (Vertex j = 0; j < n; ++j) {
      Matrix factor;
      if (j == i) {
        factor = a;
      } else if (g.e1(j, i)) {
        factor = Matrix::Identity(static_cast<Eigen::Index>(states[j].dim), static_cast<Eigen::Index>(states[j].dim));
      } else {
        factor = xi[j] * xi[j].adjoint();
      }
      out = kron(out, factor);
    }
    return out;
  };
  Vector vacuum = Vector::Ones(1);
  for (Vertex j = 0; j < n; ++j) {
    Vector next(vacuum.size() * xi[j].size());
    for (Eigen::Index a = 0; a < vacuum.size(); ++a) next.segment(a * xi[j].size(), xi[j].size()) = vacuum(a) * xi[j];
    vacuum = next;
  }
  Vector x = vacuum;
  for (std::size_t p = c.size(); p-- > 0;) x = lift(c[p], elements[p]) * x;
  return vacuum.dot(x);
}

// Random vector-state instance with every vertex of g present.
struct Instance {
  Coloring word;
  std::vector<AlgebraState> states;
  std::vector<Matrix> elements;
};

inline Instance random_instance(const Bigraph& g, std::size_t k, std::mt19937_64& rng, bool trace_states = false,
                                std::size_t min_dim = 2, std::size_t max_dim = 3) {
  Instance inst;
  std::uniform_int_distribution<std::size_t> color(0, g.size() - 1), dim(min_dim, max_dim);
  for (Vertex v = 0; v < g.size(); ++v) {
    const std::size_t d = dim(rng);
    inst.states.push_back(trace_states ? AlgebraState::trace_state(d) : AlgebraState::vector_state(random_unit_vector(d, rng)));
  }
  for (std::size_t i = 0; i < k; ++i) {
    inst.word.push_back(color(rng));
    inst.elements.push_back(random_matrix(inst.states[inst.word.back()].dim, rng));
  }
  return inst;
}

inline MomentFunctional instance_functional(const Instance& inst) {
  return [&inst](const std::vector<std::size_t>& pos) {
    return inst.states[inst.word[pos.front()]].apply(ordered_product(inst.elements, pos));
  };
}

inline Coloring colors_of(const Bigraph& g, const std::vector<std::string>& names) {
  Coloring c;
  for (const auto& n : names) c.push_back(g.index_of(n));
  return c;
}

// ---- Compatibility classes and unfinished partitions from the definitions.

// Compatibility conditions checked index by index; `tilde` admits same-color crossings.
inline bool def_compatible(const std::vector<int>& l, const Coloring& c, const Bigraph& g, bool tilde) {
  const std::size_t k = l.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (l[i] == l[j] && c[i] != c[j]) return false;
  for (std::size_t i1 = 0; i1 < k; ++i1)
    for (std::size_t i2 = i1 + 1; i2 < k; ++i2) {
      if (l[i1] != l[i2]) continue;
      for (std::size_t j = i1 + 1; j < i2; ++j)
        if (!g.e1(c[i1], c[j])) return false;
      for (std::size_t j1 = i1 + 1; j1 < i2; ++j1)
        for (std::size_t j2 = i2 + 1; j2 < k; ++j2) {
          if (l[j1] != l[j2] || l[j1] == l[i1]) continue;
          const bool ok = g.e2(c[i2], c[j1]) || (tilde && c[i2] == c[j1]);
          if (!ok) return false;
        }
    }
  return true;
}

// B' nested inside B: B' lies between two consecutive elements of B.
inline bool def_nested(const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
  for (std::size_t a = 0; a + 1 < outer.size(); ++a)
    if (outer[a] < inner.front() && inner.back() < outer[a + 1]) return true;
  return false;
}

inline bool def_zero(const std::vector<int>& l, const Coloring& c, const Bigraph& g) {
  if (!def_compatible(l, c, g, false)) return false;
  const auto blocks = label_blocks(l);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t b2 = 0; b2 < blocks.size(); ++b2) {
      if (b == b2 || c[blocks[b][0]] != c[blocks[b2][0]] || !def_nested(blocks[b], blocks[b2])) continue;
      bool obstructed = false;
      for (std::size_t m = 0; m < blocks.size(); ++m) {
        if (m == b || m == b2) continue;
        if (def_nested(blocks[b], blocks[m]) && def_nested(blocks[m], blocks[b2])) {
          const Vertex x = c[blocks[b][0]], y = c[blocks[m][0]];
          if (!(x == y || g.e2(x, y))) obstructed = true;
        }
      }
      if (!obstructed) return false;
    }
  return true;
}

inline std::set<std::vector<int>> oracle_class(const Coloring& c, const Bigraph& g, CompatClass cls) {
  std::set<std::vector<int>> out;
  brute_partitions(c.size(), [&](const std::vector<int>& l) {
    bool in = false;
    switch (cls) {
      case CompatClass::Full: in = def_compatible(l, c, g, false); break;
      case CompatClass::Tilde: in = def_compatible(l, c, g, true); break;
      case CompatClass::Zero: in = def_zero(l, c, g); break;
    }
    if (in) out.insert(l);
  });
  return out;
}

inline std::set<std::vector<int>> as_set(const std::vector<SetPartition>& ps) {
  std::set<std::vector<int>> out;
  for (const auto& p : ps) out.insert(p.labels());
  return out;
}

inline Coloring random_word(std::size_t k, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  Coloring c(k);
  for (auto& x : c) x = d(rng);
  return c;
}

inline std::size_t catalan_count(std::size_t n) { return static_cast<std::size_t>(catalan(n).get_num().get_ui()); }
// Unfinished NC from the definition: close every unfinished block at a
// virtual point past the end, the block with the latest element closing first.
inline bool oracle_unfinished_nc(const std::vector<int>& labels, const std::vector<bool>& open) {
  auto blocks = label_blocks(labels);
  std::vector<std::size_t> order;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    if (open[b]) order.push_back(b);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return blocks[a].back() > blocks[b].back(); });
  std::vector<int> extended = labels;
  for (std::size_t b : order) extended.push_back(static_cast<int>(b));
  return labels_noncrossing(extended);
}

}  // namespace bgi::testing

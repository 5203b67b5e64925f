#include "bgi/hilbert.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "bgi/cumulants.hpp"

namespace bgi {

bool is_permissible(const Bigraph& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (!g.e1(w[j], w[i])) return false;
    }
  }
  return true;
}

bool is_reduced(const Bigraph& g, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      if (w[i] != w[j]) continue;
      bool separated = false;
      for (std::size_t m = i + 1; m < j && !separated; ++m) {
        separated = w[m] != w[i] && !g.tensor(w[m], w[i]);
      }
      if (!separated) return false;
    }
  }
  return true;
}

std::vector<Word> equivalence_class(const Bigraph& g, const Word& w) {
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (!g.tensor(cur[i], cur[i + 1])) continue;
      Word next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

bool equivalent(const Bigraph& g, const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  return representative(g, a) == representative(g, b);
}

Word representative(const Bigraph& g, const Word& w) {
  // Greedy normal form: repeatedly pull to the front the smallest letter that
  // commutes with everything before it.
  Word rest = w, out;
  while (!rest.empty()) {
    std::size_t best = rest.size();
    for (std::size_t p = 0; p < rest.size(); ++p) {
      bool movable = true;
      for (std::size_t q = 0; q < p && movable; ++q) movable = g.tensor(rest[q], rest[p]);
      if (movable && (best == rest.size() || rest[p] < rest[best])) best = p;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

std::vector<std::size_t> occurrence_map(const Word& from, const Word& to) {
  if (from.size() != to.size()) throw Error(ErrorCode::ArityMismatch, "words of different length");
  std::map<Vertex, std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < to.size(); ++i) where[to[i]].push_back(i);
  std::map<Vertex, std::size_t> used;
  std::vector<std::size_t> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto& slots = where[from[i]];
    const std::size_t r = used[from[i]]++;
    if (r >= slots.size()) throw Error(ErrorCode::ArityMismatch, "words are not rearrangements of each other");
    map[i] = slots[r];
  }
  return map;
}

Vector permute_tensor(const Vector& t, const std::vector<std::size_t>& dims_from, const std::vector<std::size_t>& map) {
  const std::size_t m = dims_from.size();
  std::vector<std::size_t> dims_to(m);
  for (std::size_t i = 0; i < m; ++i) dims_to[map[i]] = dims_from[i];
  std::vector<std::size_t> stride_to(m, 1);
  for (std::size_t i = m; i-- > 1;) stride_to[i - 1] = stride_to[i] * dims_to[i];
  Vector out(t.size());
  std::vector<std::size_t> digit(m, 0);
  for (Eigen::Index flat = 0; flat < t.size(); ++flat) {
    std::size_t target = 0;
    for (std::size_t i = 0; i < m; ++i) target += digit[i] * stride_to[map[i]];
    out(static_cast<Eigen::Index>(target)) = t(flat);
    for (std::size_t i = m; i-- > 0;) {
      if (++digit[i] < dims_from[i]) break;
      digit[i] = 0;
    }
  }
  return out;
}

double distance(const StateVector& a, const StateVector& b) {
  double sq = 0;
  std::set<Word> keys;
  for (const auto& [w, v] : a) keys.insert(w);
  for (const auto& [w, v] : b) keys.insert(w);
  for (const Word& w : keys) {
    auto ia = a.find(w);
    auto ib = b.find(w);
    if (ia != a.end() && ib != b.end()) {
      sq += (ia->second - ib->second).squaredNorm();
    } else {
      sq += (ia != a.end() ? ia->second : ib->second).squaredNorm();
    }
  }
  return std::sqrt(sq);
}

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Unitary whose first column is the unit vector xi.
Matrix adapted_basis(const Vector& xi) {
  Eigen::HouseholderQR<Matrix> qr(xi);
  Matrix q = qr.householderQ();
  const Complex r00 = qr.matrixQR()(0, 0);
  q.col(0) *= r00;  // q0 * r00 = xi and |r00| = 1
  return q;
}

void accumulate(StateVector& y, const Word& w, const Vector& v) {
  auto it = y.find(w);
  if (it == y.end()) {
    y.emplace(w, v);
  } else {
    it->second += v;
  }
}

constexpr std::size_t kMaxSpaceEntries = std::size_t{1} << 22;

}  // namespace

ProductSpace ProductSpace::build(const Bigraph& g, const std::vector<AlgebraState>& states, std::size_t max_length) {
  if (states.size() != g.size()) throw Error(ErrorCode::ArityMismatch, "one state per vertex required");
  ProductSpace s;
  s.graph_ = g;
  s.states_ = states;
  s.max_length_ = max_length;
  for (const AlgebraState& st : states) {
    if (st.kind == StateKind::Vector) {
      s.basis_.push_back(adapted_basis(st.vector));
    } else {
      const std::size_t d = st.dim;
      Vector xi = Vector::Zero(static_cast<Eigen::Index>(d * d));
      for (std::size_t i = 0; i < d; ++i) xi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
      s.basis_.push_back(adapted_basis(xi));
    }
    s.reduced_dims_.push_back(static_cast<std::size_t>(s.basis_.back().rows()) - 1);
  }
  // Representatives grow by left extension: every admissible word is v w'
  // with w' admissible, and v r(w') is equivalent to it.
  std::set<Word> level{Word{}}, all{Word{}};
  for (std::size_t len = 0; len < max_length; ++len) {
    std::set<Word> next;
    for (const Word& w : level) {
      for (Vertex v = 0; v < g.size(); ++v) {
        Word vw{v};
        vw.insert(vw.end(), w.begin(), w.end());
        if (is_permissible(g, vw) && is_reduced(g, vw)) next.insert(representative(g, vw));
      }
    }
    all.insert(next.begin(), next.end());
    level = std::move(next);
  }
  s.words_.assign(all.begin(), all.end());
  if (s.total_dim() > kMaxSpaceEntries) throw Error(ErrorCode::SizeGuard, "truncated product space is too large");

  for (const Word& w : s.words_) {
    for (Vertex v = 0; v < g.size(); ++v) {
      Transition t;
      Word vw{v};
      vw.insert(vw.end(), w.begin(), w.end());
      if (is_permissible(g, vw) && is_reduced(g, vw)) {
        t.kind = 1;
        if (vw.size() > max_length) {
          t.overflow = true;
        } else {
          t.target = representative(g, vw);
          t.map = occurrence_map(vw, t.target);
        }
      } else {
        for (std::size_t p = 0; p < w.size(); ++p) {
          if (w[p] == v) {
            Word rest = w;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            t.kind = 2;
            t.target = representative(g, rest);
            Word front{v};
            front.insert(front.end(), t.target.begin(), t.target.end());
            t.map = occurrence_map(front, w);
            break;
          }
          if (!g.tensor(w[p], v)) break;
        }
      }
      s.transitions_.emplace(std::make_pair(v, w), std::move(t));
    }
  }
  return s;
}

std::vector<std::size_t> ProductSpace::word_dims(const Word& w) const {
  std::vector<std::size_t> dims;
  for (Vertex v : w) dims.push_back(reduced_dims_[v]);
  return dims;
}

std::size_t ProductSpace::word_dim(const Word& w) const {
  std::size_t d = 1;
  for (Vertex v : w) d *= reduced_dims_[v];
  return d;
}

std::size_t ProductSpace::total_dim() const {
  std::size_t total = 0;
  for (const Word& w : words_) total += word_dim(w);
  return total;
}

Matrix ProductSpace::adapted(Vertex v, const Matrix& a) const {
  const AlgebraState& st = states_.at(v);
  if (static_cast<std::size_t>(a.rows()) != st.dim || static_cast<std::size_t>(a.cols()) != st.dim) {
    throw Error(ErrorCode::DimMismatch, "element dimension differs from its algebra");
  }
  const Matrix& w = basis_[v];
  if (st.kind == StateKind::Vector) return w.adjoint() * a * w;
  return w.adjoint() * kron(a, Matrix::Identity(a.rows(), a.cols())) * w;
}

StateVector ProductSpace::vacuum() const {
  StateVector x;
  x.emplace(Word{}, Vector::Ones(1));
  return x;
}

const ProductSpace::Transition& ProductSpace::transition(Vertex v, const Word& w) const {
  auto it = transitions_.find({v, w});
  if (it == transitions_.end()) throw Error(ErrorCode::TruncationOverflow, "word outside the truncated space");
  return it->second;
}

StateVector ProductSpace::apply_adapted(Vertex v, const Matrix& a, const StateVector& x) const {
  const Eigen::Index dr = static_cast<Eigen::Index>(reduced_dims_.at(v));
  StateVector y;
  for (const auto& [w, t] : x) {
    const Transition& tr = transition(v, w);
    if (tr.kind == 1) {
      // H_w = xi_v (x) H_w: the xi part stays on w, the rest moves to r(v w).
      accumulate(y, w, a(0, 0) * t);
      if (dr == 0 || t.size() == 0) continue;
      const Vector out = kron(Vector(a.col(0).tail(dr)), t);
      if (tr.overflow) {
        if (out.norm() > 0) throw Error(ErrorCode::TruncationOverflow, "word length exceeds the truncation");
        continue;
      }
      Word vw{v};
      vw.insert(vw.end(), w.begin(), w.end());
      accumulate(y, tr.target, permute_tensor(out, word_dims(vw), tr.map));
    } else if (tr.kind == 2) {
      // H_w = H_v^o (x) H_w'' after reordering; split the output of a.
      Word front{v};
      front.insert(front.end(), tr.target.begin(), tr.target.end());
      std::vector<std::size_t> inverse(tr.map.size());
      for (std::size_t i = 0; i < tr.map.size(); ++i) inverse[tr.map[i]] = i;
      const Vector tf = permute_tensor(t, word_dims(w), inverse);
      const Eigen::Index rest = dr ? tf.size() / dr : 0;
      using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      Eigen::Map<const RowMajor> tm(tf.data(), dr, rest);
      const Vector to_rest = (a.row(0).tail(dr) * tm).transpose();
      accumulate(y, tr.target, to_rest);
      RowMajor back = a.bottomRightCorner(dr, dr) * tm;
      Vector flat = Eigen::Map<Vector>(back.data(), back.size());
      accumulate(y, w, permute_tensor(flat, word_dims(front), tr.map));
    }
  }
  return y;
}

StateVector apply_lambda(const ProductSpace& space, Vertex v, const Matrix& a, const StateVector& x) {
  return space.apply_adapted(v, space.adapted(v, a), x);
}

Complex vacuum_moment(const ProductSpace& space, const Coloring& c, const std::vector<Matrix>& a) {
  if (c.size() != a.size()) throw Error(ErrorCode::ArityMismatch, "one element per letter required");
  StateVector x = space.vacuum();
  for (std::size_t j = c.size(); j-- > 0;) x = apply_lambda(space, c[j], a[j], x);
  auto it = x.find(Word{});
  return it == x.end() ? Complex(0) : it->second(0);
}

namespace {

Matrix compress(const Matrix& a, Step s) {
  Matrix out = a;
  // Row 0 / column 0 are the xi directions: P keeps them, Q removes them.
  if (s.delta == 1) {
    out.row(0).setZero();
  } else {
    out.bottomRows(out.rows() - 1).setZero();
  }
  if (s.epsilon == 1) {
    out.col(0).setZero();
  } else {
    out.rightCols(out.cols() - 1).setZero();
  }
  return out;
}

}  // namespace

UnfinishedActionResult unfinished_action(const ProductSpace& space, const Coloring& c, const std::vector<Matrix>& a,
                                         const std::vector<Step>& steps) {
  if (c.size() != a.size() || c.size() != steps.size()) throw Error(ErrorCode::ArityMismatch, "one element and step per index");
  const Bigraph& g = space.graph();
  const UnfinishedPartition u = colored_path_to_unfinished(steps, c);  // throws on invalid paths
  std::vector<Matrix> adapted;
  for (std::size_t j = 0; j < c.size(); ++j) adapted.push_back(space.adapted(c[j], a[j]));

  UnfinishedActionResult r;
  StateVector x = space.vacuum();
  for (std::size_t j = 0; j < c.size(); ++j) x = space.apply_adapted(c[j], compress(adapted[j], steps[j]), x);
  r.operator_route = x;

  if (!is_unfinished_compatible(u, c, g, true)) return r;
  const SetPartition& p = u.partition;
  Complex scalar = 1;
  std::vector<std::size_t> open;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    const auto& B = p.block(b);
    if (u.unfinished[b]) {
      open.push_back(b);
      continue;
    }
    // Boolean cumulant of the block read in product order (largest index first).
    std::vector<Matrix> tuple;
    for (std::size_t i = B.size(); i-- > 0;) tuple.push_back(a[B[i]]);
    scalar *= cumulant(CumulantKind::Boolean, tuple_functional(space.state(c[B.front()]), tuple), tuple.size());
  }
  // Unfinished blocks ordered by creation; the newest letter comes first.
  Word w;
  Vector tensor = Vector::Ones(1);
  for (std::size_t r_ = open.size(); r_-- > 0;) {
    const auto& B = p.block(open[r_]);
    const Vertex v = c[B.front()];
    Vector vec = Vector::Zero(adapted[B.front()].rows());
    vec(0) = 1;
    for (std::size_t j : B) {
      vec = adapted[j] * vec;
      vec(0) = 0;
    }
    w.push_back(v);
    tensor = kron(tensor, Vector(vec.tail(vec.size() - 1)));
  }
  if (!is_permissible(g, w) || !is_reduced(g, w)) {
    throw Error(ErrorCode::NotCompatible, "unfinished blocks do not spell an admissible word");
  }
  const Word target = representative(g, w);
  r.formula_route.emplace(target, scalar * permute_tensor(tensor, space.word_dims(w), occurrence_map(w, target)));
  return r;
}

}  // namespace bgi

#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"

using namespace bgi;
using namespace bgi::testing;

namespace {
Complex inner(const StateVector& a, const StateVector& b) {
  Complex s = 0;
  for (const auto& [w, v] : a) {
    auto it = b.find(w);
    if (it != b.end()) s += v.dot(it->second);
  }
  return s;
}

StateVector add(StateVector a, const StateVector& b) {
  for (const auto& [w, v] : b) {
    auto it = a.find(w);
    if (it == a.end()) {
      a.emplace(w, v);
    } else {
      it->second += v;
    }
  }
  return a;
}

double norm(const StateVector& a) { return std::sqrt(std::abs(inner(a, a))); }

void all_words(std::size_t n, std::size_t len, const std::function<void(const Word&)>& f) {
  Word w(len, 0);
  while (true) {
    f(w);
    std::size_t i = 0;
    while (i < len && ++w[i] == n) w[i++] = 0;
    if (i == len) return;
  }
}

// Random vector reachable from the vacuum by a few random operators.
StateVector random_state(const ProductSpace& space, std::size_t steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<Vertex> letter(0, space.graph().size() - 1);
  StateVector x = space.vacuum();
  for (std::size_t s = 0; s < steps; ++s) {
    const Vertex v = letter(rng);
    x = add(apply_lambda(space, v, random_matrix(space.state(v).dim, rng), x), x);
  }
  return x;
}

std::vector<AlgebraState> random_states(std::size_t n, std::mt19937_64& rng, bool trace = false) {
  std::vector<AlgebraState> s;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t d = 2 + v % 2;
    s.push_back(trace ? AlgebraState::trace_state(d) : AlgebraState::vector_state(random_unit_vector(d, rng)));
  }
  return s;
}
}  // namespace

TEST_CASE("reduced and permissible words") {
  auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
  CHECK(is_reduced(single, {}));
  CHECK(is_permissible(single, {}));
  CHECK(!is_reduced(single, {0, 0}));
  auto boolean = pair_graph(PairKind::Boolean);
  CHECK(!is_permissible(boolean, {0, 1}));
  auto mono = pair_graph(PairKind::Monotone);  // (v,w) in E1
  CHECK(is_permissible(mono, {1, 0}));
  CHECK(!is_permissible(mono, {0, 1}));
  // A different letter in between separates equal letters unless it is tensor related.
  auto free = pair_graph(PairKind::Free);
  CHECK(is_reduced(free, {0, 1, 0}));
  CHECK(!is_reduced(pair_graph(PairKind::Tensor), {0, 1, 0}));
  // An equal letter in between never counts as a separator.
  CHECK(!is_reduced(free, {0, 0, 0}));
}

TEST_CASE("word equivalence and representatives") {
  auto tensor = pair_graph(PairKind::Tensor);
  CHECK(equivalent(tensor, {0, 1}, {1, 0}));
  CHECK(representative(tensor, {1, 0}) == Word{0, 1});
  CHECK(!equivalent(pair_graph(PairKind::Free), {0, 1}, {1, 0}));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 12; ++t) {
    auto g = random_bigraph(3, rng);
    for (std::size_t len = 0; len <= 5; ++len) {
      all_words(3, len, [&](const Word& w) {
        const auto cls = equivalence_class(g, w);
        CHECK(representative(g, w) == *std::min_element(cls.begin(), cls.end()));
        for (const auto& x : cls) {
          CHECK(is_reduced(g, x) == is_reduced(g, w));
          CHECK(is_permissible(g, x) == is_permissible(g, w));
        }
        // Left-append invariance.
        if (len >= 1 && len <= 4) {
          for (Vertex v = 0; v < 3; ++v) {
            Word vw = {v};
            vw.insert(vw.end(), w.begin(), w.end());
            for (const auto& x : cls) {
              Word vx = {v};
              vx.insert(vx.end(), x.begin(), x.end());
              CHECK(equivalent(g, vw, vx));
            }
          }
        }
      });
    }
  }
}

TEST_CASE("occurrence maps and tensor permutation") {
  const Word from = {0, 1, 0}, to = {1, 0, 0};
  const auto map = occurrence_map(from, to);
  CHECK(map == std::vector<std::size_t>{1, 0, 2});
  Vector t(12);
  for (int i = 0; i < 12; ++i) t(i) = i;
  // dims 2 x 3 x 2 reordered to 3 x 2 x 2: entry (a,b,c) moves to (b,a,c).
  const Vector p = permute_tensor(t, {2, 3, 2}, map);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c) CHECK(p(b * 4 + a * 2 + c) == t(a * 6 + b * 2 + c));
}

TEST_CASE("product space words") {
  auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
  auto s1 = ProductSpace::build(single, {AlgebraState::trace_state(2)}, 3);
  CHECK(s1.words() == std::vector<Word>{{}, {0}});
  std::mt19937_64 rng(32);
  auto states = random_states(2, rng);
  auto sb = ProductSpace::build(pair_graph(PairKind::Boolean), states, 2);
  CHECK(sb.words().size() == 3);
  auto st = ProductSpace::build(pair_graph(PairKind::Tensor), states, 2);
  CHECK(st.words().size() == 4);
  CHECK(std::count(st.words().begin(), st.words().end(), Word{0, 1}) == 1);
  // Representatives are permissible, reduced and pairwise inequivalent.
  for (int t = 0; t < 10; ++t) {
    auto g = random_bigraph(3, rng);
    auto space = ProductSpace::build(g, random_states(3, rng), 4);
    std::set<Word> reps(space.words().begin(), space.words().end());
    for (const auto& w : space.words()) {
      CHECK(is_permissible(g, w));
      CHECK(is_reduced(g, w));
      CHECK(representative(g, w) == w);
    }
    for (std::size_t len = 0; len <= 4; ++len)
      all_words(3, len, [&](const Word& w) {
        if (is_permissible(g, w) && is_reduced(g, w)) CHECK(reps.count(representative(g, w)) == 1);
      });
    CHECK(space.word_dim({}) == 1);
  }
}

TEST_CASE("lambda on the vacuum") {
  auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
  Vector xi = Vector::Zero(3);
  xi(0) = 1;
  auto space = ProductSpace::build(single, {AlgebraState::vector_state(xi)}, 2);
  const auto vac = space.vacuum();
  CHECK(distance(apply_lambda(space, 0, Matrix::Identity(3, 3), vac), vac) < 1e-12);
  CHECK(distance(apply_lambda(space, 0, xi * xi.adjoint(), vac), vac) < 1e-12);
  Matrix a = Matrix::Zero(3, 3);
  a(1, 0) = 1;  // |e2><xi|
  auto y = apply_lambda(space, 0, a, vac);
  CHECK((y.count(Word{}) == 0 || y.at(Word{}).norm() < 1e-12));
  REQUIRE(y.count(Word{0}) == 1);
  CHECK(std::abs(y.at(Word{0}).norm() - 1.0) < 1e-12);
  // Applying the adjoint brings it back.
  CHECK(distance(apply_lambda(space, 0, a.adjoint(), y), vac) < 1e-12);
}

TEST_CASE("lambda is a star homomorphism and tensor pairs commute") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; ++t) {
    auto g = random_bigraph(3, rng);
    auto space = ProductSpace::build(g, random_states(3, rng, t % 2), 5);
    for (int r = 0; r < 4; ++r) {
      const auto x = random_state(space, 2, rng);
      const auto y = random_state(space, 2, rng);
      std::uniform_int_distribution<Vertex> letter(0, 2);
      const Vertex v = letter(rng);
      const std::size_t d = space.state(v).dim;
      const Matrix a = random_matrix(d, rng), b = random_matrix(d, rng);
      CHECK(distance(apply_lambda(space, v, a * b, x), apply_lambda(space, v, a, apply_lambda(space, v, b, x))) < 1e-10);
      CHECK(std::abs(inner(y, apply_lambda(space, v, a, x)) - inner(apply_lambda(space, v, a.adjoint(), y), x)) < 1e-10);
      for (Vertex w = 0; w < 3; ++w) {
        if (w == v || !g.tensor(v, w)) continue;
        const Matrix c = random_matrix(space.state(w).dim, rng);
        CHECK(distance(apply_lambda(space, v, a, apply_lambda(space, w, c, x)),
                       apply_lambda(space, w, c, apply_lambda(space, v, a, x))) < 1e-10);
      }
    }
  }
}

TEST_CASE("truncation overflow") {
  auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
  auto free = pair_graph(PairKind::Free);
  std::mt19937_64 rng(34);
  auto space = ProductSpace::build(free, random_states(2, rng), 1);
  auto x = apply_lambda(space, 0, random_matrix(2, rng), space.vacuum());
  CHECK_THROWS_AS(apply_lambda(space, 1, random_matrix(3, rng), x), Error);
}

TEST_CASE("vacuum moments agree with the cumulant expansion") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 60; ++t) {
    auto g = random_bigraph(1 + t % 3, rng);
    const auto inst = random_instance(g, 1 + t % 6, rng, t % 3 == 0);
    auto space = ProductSpace::build(g, inst.states, inst.word.size());
    const Complex expected = joint_moment(g, inst.word, instance_functional(inst), CumulantKind::Free);
    CHECK(near(vacuum_moment(space, inst.word, inst.elements), expected));
  }
  // k = 1 is the state itself.
  auto g = pair_graph(PairKind::Monotone);
  const auto inst = random_instance(g, 1, rng);
  auto space = ProductSpace::build(g, inst.states, 1);
  CHECK(near(vacuum_moment(space, inst.word, inst.elements), inst.states[inst.word[0]].apply(inst.elements[0])));
}

TEST_CASE("pair moments through the product space") {
  std::mt19937_64 rng(36);
  const auto av = random_algebra(2, 1, 200), aw = random_algebra(3, 1, 201);
  const Matrix& a = av.elements[0];
  const Matrix& b = aw.elements[0];
  const Complex fa = av.state.apply(a), fb = aw.state.apply(b);
  const Complex fa2 = av.state.apply(a * a), fb2 = aw.state.apply(b * b);
  auto mono = ProductSpace::build(pair_graph(PairKind::Monotone), {av.state, aw.state}, 3);
  CHECK(near(vacuum_moment(mono, {0, 1, 0}, {a, b, a}), fa2 * fb));
  auto free = ProductSpace::build(pair_graph(PairKind::Free), {av.state, aw.state}, 4);
  CHECK(near(vacuum_moment(free, {0, 1, 0, 1}, {a, b, a, b}), fa2 * fb * fb + fa * fa * fb2 - fa * fa * fb * fb));
}

TEST_CASE("order reversal adapter") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto g = random_bigraph(3, rng);
    const auto inst = random_instance(g, 1 + t % 6, rng);
    auto space = ProductSpace::build(g, inst.states, inst.word.size());
    std::vector<Matrix> adj;
    for (auto it = inst.elements.rbegin(); it != inst.elements.rend(); ++it) adj.push_back(it->adjoint());
    CHECK(near(vacuum_moment(space, inst.word, inst.elements), std::conj(vacuum_moment(space, reversed(inst.word), adj))));
  }
}

namespace {
std::vector<std::vector<Step>> all_step_sequences(std::size_t k) {
  std::vector<std::vector<Step>> out;
  for (std::size_t code = 0; code < (std::size_t{1} << (2 * k)); ++code) {
    std::vector<Step> s(k);
    for (std::size_t j = 0; j < k; ++j) s[j] = Step{static_cast<int>((code >> (2 * j)) & 1), static_cast<int>((code >> (2 * j + 1)) & 1)};
    out.push_back(s);
  }
  return out;
}
}  // namespace

TEST_CASE("unfinished moments: operator route equals formula route") {
  std::mt19937_64 rng(38);
  using S = Step;
  // Three finished singletons, then an unfinished block of three.
  {
    auto single = Bigraph::validate({"v"}, {{"v", "v"}}, {});
    auto states = random_states(1, rng);
    states[0] = AlgebraState::vector_state(random_unit_vector(2, rng));
    auto space = ProductSpace::build(single, states, 6);
    std::vector<Matrix> a;
    for (int i = 0; i < 6; ++i) a.push_back(random_matrix(2, rng));
    const std::vector<Step> path = {S{0, 0}, S{0, 0}, S{0, 0}, S{1, 0}, S{1, 1}, S{1, 1}};
    auto r = unfinished_action(space, {0, 0, 0, 0, 0, 0}, a, path);
    CHECK(distance(r.operator_route, r.formula_route) < 1e-10);
    CHECK(norm(r.operator_route) > 1e-6);
    CHECK_THROWS_AS(unfinished_action(space, {0, 0, 0, 0, 0, 0}, a,
                                      {S{0, 0}, S{0, 0}, S{0, 1}, S{1, 1}, S{1, 1}, S{1, 0}}),
                    Error);
  }
  // All finished singletons: product of states times the vacuum.
  {
    auto g = pair_graph(PairKind::Free);
    const auto inst = random_instance(g, 4, rng);
    auto space = ProductSpace::build(g, inst.states, 4);
    auto r = unfinished_action(space, inst.word, inst.elements, std::vector<Step>(4, S{0, 0}));
    Complex prod = 1;
    for (std::size_t j = 0; j < 4; ++j) prod *= inst.states[inst.word[j]].apply(inst.elements[j]);
    StateVector expected;
    expected.emplace(Word{}, Vector::Constant(1, prod));
    CHECK(distance(r.operator_route, expected) < 1e-10);
    CHECK(distance(r.formula_route, expected) < 1e-10);
  }
  // Incompatible colors under an unfinished block: both routes vanish.
  {
    auto g = pair_graph(PairKind::Boolean);
    const auto inst = random_instance(g, 2, rng);
    auto space = ProductSpace::build(g, inst.states, 2);
    auto r = unfinished_action(space, {0, 1}, {random_matrix(inst.states[0].dim, rng), random_matrix(inst.states[1].dim, rng)},
                               {S{1, 0}, S{0, 0}});
    CHECK(norm(r.operator_route) < 1e-12);
    CHECK(r.formula_route.empty());
  }
  // Exhaustive over valid colored paths on random instances.
  for (int t = 0; t < 30; ++t) {
    auto g = random_bigraph(1 + t % 3, rng);
    const std::size_t k = 1 + t % 4;
    const auto inst = random_instance(g, k, rng, t % 4 == 0);
    auto space = ProductSpace::build(g, inst.states, k);
    std::vector<Matrix> a = inst.elements;
    // Application order is the reverse of product order.
    std::reverse(a.begin(), a.end());
    const Coloring c = reversed(inst.word);
    StateVector total;
    for (const auto& steps : all_step_sequences(k)) {
      if (!is_valid_colored_path(steps, c)) continue;
      auto r = unfinished_action(space, c, a, steps);
      CHECK(distance(r.operator_route, r.formula_route) < 1e-9 * (1 + norm(r.operator_route)));
      total = add(total, r.operator_route);
    }
    // Four-term expansion: the valid paths carry the whole vector.
    StateVector direct = space.vacuum();
    for (std::size_t j = 0; j < k; ++j) direct = apply_lambda(space, c[j], a[j], direct);
    CHECK(distance(total, direct) < 1e-9 * (1 + norm(direct)));
  }
}

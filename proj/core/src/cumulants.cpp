#include "bgi/cumulants.hpp"

#include <bit>

namespace bgi {

const char* cumulant_kind_name(CumulantKind kind) {
  switch (kind) {
    case CumulantKind::Free: return "free";
    case CumulantKind::Boolean: return "boolean";
    case CumulantKind::Classical: return "classical";
  }
  return "unknown";
}

std::vector<SetPartition> cumulant_lattice(CumulantKind kind, std::size_t n) {
  switch (kind) {
    case CumulantKind::Free: return enumerate_noncrossing(n);
    case CumulantKind::Boolean: return enumerate_interval(n);
    case CumulantKind::Classical: return enumerate_all(n);
  }
  return {};
}

Rational lattice_moebius_to_top(CumulantKind kind, const SetPartition& p) {
  const std::size_t b = p.block_count();
  Rational sign = (b - 1) % 2 ? -1 : 1;
  switch (kind) {
    case CumulantKind::Free: return moebius_nc(p, SetPartition::one_block(p.size()));
    case CumulantKind::Boolean: return sign;
    case CumulantKind::Classical: {
      mpz_class f = 1;
      for (std::size_t i = 2; i < b; ++i) f *= static_cast<unsigned long>(i);
      return sign * Rational(f);
    }
  }
  return 0;
}

Complex cumulant(CumulantKind kind, const MomentFunctional& phi, std::size_t n) {
  if (n == 0 || n > kMaxCumulantOrder) throw Error(ErrorCode::SizeGuard, "cumulant order must be in 1..10");
  Complex total = 0;
  for (const SetPartition& p : cumulant_lattice(kind, n)) {
    Complex term = lattice_moebius_to_top(kind, p).get_d();
    for (const auto& B : p.blocks()) term *= phi(B);
    total += term;
  }
  return total;
}

std::vector<std::size_t> mask_positions(std::uint32_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

CumulantTable::CumulantTable(CumulantKind kind, MomentFunctional phi, std::size_t n)
    : kind_(kind), phi_(std::move(phi)), n_(n), moments_(std::size_t{1} << n), cumulants_(std::size_t{1} << n) {
  if (n > kMaxCumulantOrder) throw Error(ErrorCode::SizeGuard, "cumulant tables limited to k <= 10");
}

Complex CumulantTable::moment(std::uint32_t mask) {
  auto& slot = moments_.at(mask);
  if (!slot) slot = phi_(mask_positions(mask));
  return *slot;
}

Complex CumulantTable::cumulant(std::uint32_t mask) {
  auto& slot = cumulants_.at(mask);
  if (slot) return *slot;
  const std::vector<std::size_t> pos = mask_positions(mask);
  const std::size_t m = pos.size();
  auto it = lattice_masks_.find(m);
  if (it == lattice_masks_.end()) {
    std::vector<std::vector<std::uint32_t>> local;
    for (const SetPartition& p : cumulant_lattice(kind_, m)) {
      if (p.block_count() == 1) continue;
      std::vector<std::uint32_t> masks;
      for (std::size_t b = 0; b < p.block_count(); ++b) masks.push_back(p.block_mask(b));
      local.push_back(std::move(masks));
    }
    it = lattice_masks_.emplace(m, std::move(local)).first;
  }
  // phi(S) = sum over lattice partitions of products of cumulants; the top
  // element carries K(S) itself.
  Complex rest = 0;
  for (const auto& blocks : it->second) {
    Complex term = 1;
    for (std::uint32_t local : blocks) {
      std::uint32_t global = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (local & (1u << i)) global |= 1u << pos[i];
      }
      term *= cumulant(global);
    }
    rest += term;
  }
  // Entries of lattice_masks_ stay valid: std::map never invalidates on insert.
  slot = moment(mask) - rest;
  return *cumulants_.at(mask);
}

Complex CumulantTable::partitioned(const SetPartition& p) {
  Complex term = 1;
  for (std::size_t b = 0; b < p.block_count(); ++b) term *= cumulant(p.block_mask(b));
  return term;
}

namespace {

CompatClass class_for(CumulantKind basis) {
  switch (basis) {
    case CumulantKind::Free: return CompatClass::Full;
    case CumulantKind::Boolean: return CompatClass::Zero;
    case CumulantKind::Classical: return CompatClass::Tilde;
  }
  return CompatClass::Full;
}

std::pair<Complex, std::size_t> expand(const Bigraph& g, const Coloring& c, const MomentFunctional& phi, CumulantKind basis) {
  if (c.size() > kMaxCumulantOrder) throw Error(ErrorCode::SizeGuard, "joint moments limited to k <= 10");
  CumulantTable table(basis, phi, c.size());
  Complex total = 0;
  std::size_t count = 0;
  for_each_compatible(c, g, class_for(basis), [&](const SetPartition& p) {
    total += table.partitioned(p);
    ++count;
  });
  return {total, count};
}

}  // namespace

Complex joint_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi, CumulantKind basis) {
  return expand(g, c, phi, basis).first;
}

double JointMomentReport::max_discrepancy() const {
  return std::max({discrepancy(free, boolean), discrepancy(free, classical), discrepancy(boolean, classical)});
}

JointMomentReport joint_moment_all(const Bigraph& g, const Coloring& c, const MomentFunctional& phi) {
  JointMomentReport r;
  std::tie(r.free, r.n_free) = expand(g, c, phi, CumulantKind::Free);
  std::tie(r.boolean, r.n_boolean) = expand(g, c, phi, CumulantKind::Boolean);
  std::tie(r.classical, r.n_classical) = expand(g, c, phi, CumulantKind::Classical);
  return r;
}

Complex mixed_boolean_cumulant(const Bigraph& g, const Coloring& c, const MomentFunctional& phi) {
  CumulantTable table(CumulantKind::Free, phi, c.size());
  Complex total = 0;
  for_each_compatible(c, g, CompatClass::Full, [&](const SetPartition& p) {
    if (is_irreducible(p)) total += table.partitioned(p);
  });
  return total;
}

Complex mixed_boolean_cumulant_by_inversion(const Bigraph& g, const Coloring& c, const MomentFunctional& phi) {
  const std::size_t k = c.size();
  // Joint moments of every consecutive sub-word, shifted onto [0, len).
  std::map<std::pair<std::size_t, std::size_t>, Complex> interval_moment;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b <= k; ++b) {
      Coloring sub(c.begin() + a, c.begin() + b);
      MomentFunctional shifted = [&phi, a](const std::vector<std::size_t>& pos) {
        std::vector<std::size_t> moved;
        for (std::size_t p : pos) moved.push_back(p + a);
        return phi(moved);
      };
      interval_moment[{a, b}] = joint_moment(g, sub, shifted, CumulantKind::Free);
    }
  }
  Complex total = 0;
  for (const SetPartition& p : enumerate_interval(k)) {
    Complex term = lattice_moebius_to_top(CumulantKind::Boolean, p).get_d();
    for (const auto& B : p.blocks()) term *= interval_moment.at({B.front(), B.back() + 1});
    total += term;
  }
  return total;
}

bool is_bmt_regime(const Bigraph& g) {
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex w = 0; w < g.size(); ++w) {
      if (v != w && g.e1(v, w) && g.e1(w, v) && !g.e2(v, w)) return false;
    }
  }
  return true;
}

SetPartition bmt_kernel(const Bigraph& g, const Coloring& c) {
  check_coloring(c, g);
  const std::size_t k = c.size();
  std::vector<int> raw(k);
  for (std::size_t i = 0; i < k; ++i) {
    raw[i] = static_cast<int>(i);
    for (std::size_t h = 0; h < i; ++h) {
      if (c[h] != c[i]) continue;
      bool linked = true;
      for (std::size_t j = h + 1; j < i && linked; ++j) linked = g.e1(c[h], c[j]);
      if (linked) {
        raw[i] = raw[h];
        break;
      }
    }
  }
  return SetPartition::from_labels(raw);
}

Complex bmt_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi) {
  if (!is_bmt_regime(g)) throw Error(ErrorCode::NotBMTRegime, "E2 must contain E1 n E1^T minus the diagonal");
  const SetPartition ker = bmt_kernel(g, c);
  Complex total = 1;
  for (const auto& B : ker.blocks()) total *= phi(B);
  return total;
}

bool is_epsilon_regime(const Bigraph& g) {
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex w = 0; w < g.size(); ++w) {
      if (!g.e1(v, w)) return false;
    }
  }
  return true;
}

std::vector<SetPartition> epsilon_partitions(const Bigraph& g, const Coloring& c) {
  if (!is_epsilon_regime(g)) throw Error(ErrorCode::NotEpsilonRegime, "E1 must be all of V x V");
  check_coloring(c, g);
  const SetPartition ker = kernel(c);
  std::vector<SetPartition> out;
  std::vector<SetPartition> parts(ker.block_count());
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == ker.block_count()) {
      const SetPartition p = lift(ker, parts);
      for (std::size_t x = 0; x < p.block_count(); ++x) {
        for (std::size_t y = x + 1; y < p.block_count(); ++y) {
          if (blocks_cross(p.block(x), p.block(y)) && !g.e2(c[p.block(x).front()], c[p.block(y).front()])) return;
        }
      }
      out.push_back(p);
      return;
    }
    for (const SetPartition& q : enumerate_all(ker.block(b).size())) {
      parts[b] = q;
      rec(b + 1);
    }
  };
  rec(0);
  return out;
}

Complex epsilon_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi) {
  CumulantTable table(CumulantKind::Free, phi, c.size());
  Complex total = 0;
  for (const SetPartition& p : epsilon_partitions(g, c)) total += table.partitioned(p);
  return total;
}

ProductFormulaResult product_formula_check(const Bigraph& g, const Coloring& c, const std::vector<std::size_t>& run_lengths,
                                           const std::vector<AlgebraState>& states, const std::vector<Matrix>& elements) {
  if (run_lengths.size() != c.size()) throw Error(ErrorCode::ArityMismatch, "one run length per letter required");
  Coloring expanded;
  std::vector<Matrix> runs;
  std::size_t at = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (run_lengths[i] == 0) throw Error(ErrorCode::ArityMismatch, "runs must be nonempty");
    Matrix b = Matrix::Identity(states.at(c[i]).dim, states.at(c[i]).dim);
    for (std::size_t r = 0; r < run_lengths[i]; ++r) {
      expanded.push_back(c[i]);
      b = b * elements.at(at++);
    }
    runs.push_back(b);
  }
  if (at != elements.size()) throw Error(ErrorCode::ArityMismatch, "element count differs from total run length");
  MomentProblem long_problem{g, expanded, states, elements};
  MomentProblem short_problem{g, c, states, runs};
  return {joint_moment(g, expanded, problem_functional(long_problem), CumulantKind::Free),
          joint_moment(g, c, problem_functional(short_problem), CumulantKind::Free)};
}

AssociativityResult associativity_check(const Bigraph& outer, const std::vector<Bigraph>& inner, const Coloring& c,
                                        const std::vector<AlgebraState>& states, const std::vector<Matrix>& elements) {
  const Composition comp = operad_compose(outer, inner);
  MomentProblem problem{comp.composed, c, states, elements};
  const MomentFunctional phi = problem_functional(problem);
  AssociativityResult r;
  r.direct = joint_moment(comp.composed, c, phi, CumulantKind::Free);

  const Coloring ct = outer_coloring(c, comp);
  std::map<std::vector<std::size_t>, Complex> cache;
  MomentFunctional grouped = [&](const std::vector<std::size_t>& pos) {
    auto it = cache.find(pos);
    if (it != cache.end()) return it->second;
    const std::size_t j = ct[pos.front()];
    Coloring local;
    for (std::size_t p : pos) local.push_back(comp.inner_of[c[p]]);
    MomentFunctional sub = [&](const std::vector<std::size_t>& idx) {
      std::vector<std::size_t> global;
      for (std::size_t i : idx) global.push_back(pos[i]);
      return phi(global);
    };
    const Complex value = joint_moment(inner[j], local, sub, CumulantKind::Free);
    cache.emplace(pos, value);
    return value;
  };
  r.nested = joint_moment(outer, ct, grouped, CumulantKind::Free);
  return r;
}

}  // namespace bgi

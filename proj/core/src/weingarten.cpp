#include "bgi/weingarten.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace bgi {

Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ArityMismatch, "permutations of different sizes");
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

std::vector<std::vector<std::size_t>> cycles(const Permutation& p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> cyc;
    for (std::size_t x = i; !seen[x]; x = p[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(cyc);
  }
  return out;
}

std::size_t cycle_count(const Permutation& p) {
  std::size_t count = 0;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++count;
    for (std::size_t x = i; !seen[x]; x = p[x]) seen[x] = true;
  }
  return count;
}

CycleType cycle_type(const Permutation& p) {
  CycleType t;
  for (const auto& c : cycles(p)) t.push_back(c.size());
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::size_t length(const Permutation& p) { return p.size() - cycle_count(p); }

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<CycleType> integer_partitions(std::size_t n) {
  std::vector<CycleType> out;
  CycleType cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t part = std::min(left, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Permutation permutation_of_cycle_type(const CycleType& type) {
  const std::size_t n = std::accumulate(type.begin(), type.end(), std::size_t{0});
  Permutation p(n);
  std::size_t at = 0;
  for (std::size_t len : type) {
    for (std::size_t j = 0; j < len; ++j) p[at + j] = at + (j + 1) % len;
    at += len;
  }
  return p;
}

CycleType parse_cycle_type(const std::string& text) {
  CycleType t;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const long v = std::stol(item);
    if (v <= 0) throw Error(ErrorCode::ParseError, "cycle lengths must be positive");
    t.push_back(static_cast<std::size_t>(v));
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

// Solves M x = b exactly: Bareiss fraction-free elimination to an integer
// upper-triangular system, then rational back substitution.
std::vector<Rational> solve_exact(std::vector<std::vector<mpz_class>> m, std::vector<mpz_class> b) {
  const std::size_t n = m.size();
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k] == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::SingularGram, "Gram matrix is singular (dimension below the order?)");
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      std::swap(b[pivot], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      b[i] = (b[i] * m[k][k] - m[i][k] * b[k]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(b[i]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(m[i][j]) * x[j];
    x[i] = acc / Rational(m[i][i]);
    x[i].canonicalize();
  }
  return x;
}

}  // namespace

WeingartenTable::WeingartenTable(std::size_t k, const mpz_class& dim) : k_(k), dim_(dim) {
  if (k == 0 || k > kMaxWeingartenOrder) throw Error(ErrorCode::SizeGuard, "Weingarten order must be in 1..7");
  if (dim < static_cast<unsigned long>(k)) {
    throw Error(ErrorCode::SingularGram, "Gram matrix is singular for dimension " + dim.get_str() + " < " + std::to_string(k));
  }
  const std::vector<CycleType> types = integer_partitions(k);
  std::map<CycleType, std::size_t> index;
  for (std::size_t i = 0; i < types.size(); ++i) index[types[i]] = i;
  std::vector<mpz_class> powers(k + 1);
  for (std::size_t c = 0; c <= k; ++c) mpz_pow_ui(powers[c].get_mpz_t(), dim.get_mpz_t(), c);

  // Row for class lambda: sum_rho D^{#cyc(rho)} Wg(rho^{-1} t_lambda) = [lambda = identity].
  const std::size_t n = types.size();
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
  std::vector<mpz_class> rhs(n, 0);
  const std::vector<Permutation> perms = all_permutations(k);
  for (std::size_t l = 0; l < n; ++l) {
    const Permutation t = permutation_of_cycle_type(types[l]);
    for (const Permutation& rho : perms) {
      m[l][index[cycle_type(compose(inverse(rho), t))]] += powers[cycle_count(rho)];
    }
    if (types[l] == CycleType(k, 1)) rhs[l] = 1;
  }
  const std::vector<Rational> x = solve_exact(m, rhs);
  for (std::size_t i = 0; i < n; ++i) values_[types[i]] = x[i];
}

const Rational& WeingartenTable::value_of_type(const CycleType& type) const {
  auto it = values_.find(type);
  if (it == values_.end()) throw Error(ErrorCode::ArityMismatch, "cycle type does not match the table order");
  return it->second;
}

Rational weingarten(const Permutation& p, const mpz_class& dim) { return WeingartenTable(p.size(), dim).value(p); }

SetPartition cycle_partition(const Permutation& p) {
  std::vector<int> raw(p.size());
  int label = 0;
  for (const auto& c : cycles(p)) {
    for (std::size_t x : c) raw[x] = label;
    ++label;
  }
  return SetPartition::from_labels(raw);
}

bool is_noncrossing_permutation(const Permutation& p) {
  const SetPartition part = cycle_partition(p);
  if (!is_noncrossing(part)) return false;
  // Each cycle must visit its block in increasing cyclic order.
  for (const auto& B : part.blocks()) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (p[B[j]] != B[(j + 1) % B.size()]) return false;
    }
  }
  return true;
}

AsymptoticTerm weingarten_asymptotic(const Permutation& p) {
  if (!is_noncrossing_permutation(p)) throw Error(ErrorCode::NotNonCrossing, "leading term is stated for non-crossing permutations");
  const SetPartition part = cycle_partition(p);
  AsymptoticTerm t;
  t.coefficient = moebius_nc(SetPartition::singletons(p.size()), part);
  t.exponent = -static_cast<long>(p.size() + length(p));
  return t;
}

std::vector<Permutation> stabilizer(const Coloring& word) {
  if (word.size() > kMaxStabilizerWord) throw Error(ErrorCode::SizeGuard, "stabilizer words limited to length 8");
  const SetPartition ker = kernel(word);
  std::vector<Permutation> out{identity_permutation(word.size())};
  for (const auto& B : ker.blocks()) {
    std::vector<Permutation> next;
    for (const Permutation& base : out) {
      for (const Permutation& local : all_permutations(B.size())) {
        Permutation p = base;
        for (std::size_t j = 0; j < B.size(); ++j) p[B[j]] = B[local[j]];
        next.push_back(p);
      }
    }
    out = std::move(next);
  }
  return out;
}

bool stabilizes(const Permutation& p, const Coloring& word) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (word[p[i]] != word[i]) return false;
  }
  return true;
}

Permutation restrict_permutation(const Permutation& p, const std::vector<std::size_t>& subset) {
  Permutation out(subset.size());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    auto it = std::find(subset.begin(), subset.end(), p[subset[j]]);
    if (it == subset.end()) throw Error(ErrorCode::NotStabilizing, "permutation does not preserve the subset");
    out[j] = static_cast<std::size_t>(it - subset.begin());
  }
  return out;
}

Rational weingarten_tilde(const Permutation& alpha, const Coloring& word, const SiteModel& model, unsigned long n) {
  if (alpha.size() != word.size()) throw Error(ErrorCode::ArityMismatch, "permutation and word sizes differ");
  if (!stabilizes(alpha, word)) throw Error(ErrorCode::NotStabilizing, "permutation mixes colors");
  const SetPartition ker = kernel(word);
  Rational total = 1;
  for (const auto& B : ker.blocks()) {
    mpz_class dim;
    mpz_ui_pow_ui(dim.get_mpz_t(), n, model.s1.at(word[B.front()]).size());
    total *= weingarten(restrict_permutation(alpha, B), dim);
  }
  return total;
}

}  // namespace bgi

#include "bgi/matrix_model.hpp"

#include <cmath>

#include "bgi/cumulants.hpp"
#include "bgi/weingarten.hpp"

namespace bgi {

Matrix haar_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(dim, dim);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    for (Eigen::Index j = 0; j < z.cols(); ++j) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace {
std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}
}  // namespace

std::size_t active_dim(const SiteModel& m, Vertex v, std::size_t n) { return ipow(n, m.s1.at(v).size()); }

std::size_t model_dim(const SiteModel& m, std::size_t n) { return ipow(n, m.site_count()); }

Vector apply_embedded(const SiteModel& m, std::size_t n, Vertex v, const Matrix& b, const Vector& psi) {
  const std::size_t sites = m.site_count();
  const std::size_t total = model_dim(m, n);
  if (total > kMaxModelDim) throw Error(ErrorCode::SizeGuard, "model dimension N^|S| exceeds 4096");
  if (static_cast<std::size_t>(psi.size()) != total) throw Error(ErrorCode::DimMismatch, "vector size differs from N^|S|");
  const auto& act = m.s1.at(v);
  const std::size_t d = ipow(n, act.size());
  if (static_cast<std::size_t>(b.rows()) != d || static_cast<std::size_t>(b.cols()) != d) {
    throw Error(ErrorCode::DimMismatch, "operator dimension differs from N^|S1|");
  }
  std::vector<std::size_t> stride(sites, 1);
  for (std::size_t s = sites; s-- > 1;) stride[s - 1] = stride[s] * n;
  // Offsets of the active multi-indices (first active site most significant).
  std::vector<std::size_t> offset(d, 0);
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t rem = r;
    for (std::size_t i = act.size(); i-- > 0;) {
      offset[r] += (rem % n) * stride[act[i]];
      rem /= n;
    }
  }
  std::vector<bool> is_active(sites, false);
  for (std::size_t s : act) is_active[s] = true;

  Vector out = Vector::Zero(psi.size());
  Vector gather(d);
  for (std::size_t x = 0; x < total; ++x) {
    // Visit each base index (all active digits zero) once.
    bool base = true;
    bool projected_out = false;
    for (std::size_t s = 0; s < sites; ++s) {
      const std::size_t digit = (x / stride[s]) % n;
      if (is_active[s] && digit != 0) base = false;
      if (digit != 0 && m.role(v, s) == 2) projected_out = true;
    }
    if (!base || projected_out) continue;
    for (std::size_t r = 0; r < d; ++r) gather(static_cast<Eigen::Index>(r)) = psi(static_cast<Eigen::Index>(x + offset[r]));
    const Vector res = b * gather;
    for (std::size_t r = 0; r < d; ++r) out(static_cast<Eigen::Index>(x + offset[r])) = res(static_cast<Eigen::Index>(r));
  }
  return out;
}

Matrix embed_dense(const SiteModel& m, std::size_t n, Vertex v, const Matrix& b) {
  const std::size_t sites = m.site_count();
  const std::size_t total = model_dim(m, n);
  if (total > kMaxModelDim) throw Error(ErrorCode::SizeGuard, "model dimension N^|S| exceeds 4096");
  auto digit = [&](std::size_t x, std::size_t s) { return (x / ipow(n, sites - 1 - s)) % n; };
  Matrix out = Matrix::Zero(total, total);
  for (std::size_t x = 0; x < total; ++x) {
    for (std::size_t y = 0; y < total; ++y) {
      std::size_t row = 0, col = 0;
      bool ok = true;
      for (std::size_t s = 0; s < sites && ok; ++s) {
        switch (m.role(v, s)) {
          case 1:
            row = row * n + digit(x, s);
            col = col * n + digit(y, s);
            break;
          case 2: ok = digit(x, s) == 0 && digit(y, s) == 0; break;
          default: ok = digit(x, s) == digit(y, s); break;
        }
      }
      if (ok) out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = b(row, col);
    }
  }
  return out;
}

Complex sample_moment(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements,
                      std::mt19937_64& rng) {
  if (word.size() != elements.size()) throw Error(ErrorCode::ArityMismatch, "one element per letter required");
  std::vector<Matrix> unitaries;
  for (Vertex v = 0; v < m.vertex_count(); ++v) unitaries.push_back(haar_unitary(active_dim(m, v, n), rng));
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(model_dim(m, n)));
  psi(0) = 1;
  // lambda is multiplicative, so lambda(U A U*) = lambda(U) lambda(A) lambda(U*):
  // three matrix-free applications instead of a dense conjugation.
  std::vector<Matrix> adjoints;
  for (const Matrix& u : unitaries) adjoints.push_back(u.adjoint());
  for (std::size_t j = word.size(); j-- > 0;) {
    const Vertex v = word[j];
    psi = apply_embedded(m, n, v, adjoints[v], psi);
    psi = apply_embedded(m, n, v, elements[j], psi);
    psi = apply_embedded(m, n, v, unitaries[v], psi);
  }
  return psi(0);
}

MonteCarloResult monte_carlo(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements,
                             std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw Error(ErrorCode::SizeGuard, "at least two samples are required");
  std::vector<Complex> xs;
  xs.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    xs.push_back(sample_moment(m, n, word, elements, rng));
  }
  MonteCarloResult r;
  r.samples = samples;
  for (Complex x : xs) r.mean += x;
  r.mean /= static_cast<double>(samples);
  for (Complex x : xs) r.variance += std::norm(x - r.mean);
  r.variance /= static_cast<double>(samples - 1);
  r.stderr_ = std::sqrt(r.variance / static_cast<double>(samples));
  return r;
}

Complex exact_expectation(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements) {
  const std::size_t k = word.size();
  if (elements.size() != k) throw Error(ErrorCode::ArityMismatch, "one element per letter required");
  if (k == 0) return 1;
  for (std::size_t j = 0; j < k; ++j) {
    if (word[j] >= m.vertex_count()) throw Error(ErrorCode::UnknownVertex, "word letter outside the model");
    const std::size_t d = active_dim(m, word[j], n);
    if (static_cast<std::size_t>(elements[j].rows()) != d || static_cast<std::size_t>(elements[j].cols()) != d) {
      throw Error(ErrorCode::DimMismatch, "element " + std::to_string(j + 1) + " is not N^|S1| dimensional");
    }
  }
  // Augmented indices 0..k: index 0 is the vacuum projection, with no active
  // site and every site projected; index l >= 1 is the l-th letter.
  const std::size_t len = k + 1;
  const std::vector<Permutation> stab_word = stabilizer(word);
  if (stab_word.size() > 1440) throw Error(ErrorCode::SizeGuard, "stabilizer too large for exact expectation");
  std::vector<Permutation> stab;
  for (const Permutation& p : stab_word) {
    Permutation g(len);
    g[0] = 0;
    for (std::size_t j = 0; j < k; ++j) g[j + 1] = p[j] + 1;
    stab.push_back(g);
  }
  const SetPartition ker = kernel(word);
  std::vector<std::vector<std::size_t>> classes;  // augmented positions per color
  std::vector<Vertex> class_color;
  std::vector<WeingartenTable> tables;
  for (const auto& B : ker.blocks()) {
    std::vector<std::size_t> cls;
    for (std::size_t j : B) cls.push_back(j + 1);
    classes.push_back(cls);
    class_color.push_back(word[B.front()]);
    mpz_class dim;
    mpz_ui_pow_ui(dim.get_mpz_t(), n, m.s1[word[B.front()]].size());
    tables.emplace_back(cls.size(), dim);
  }
  const std::size_t sites = m.site_count();
  std::vector<std::vector<bool>> j1(sites, std::vector<bool>(len, false)), j2(sites, std::vector<bool>(len, false));
  for (std::size_t s = 0; s < sites; ++s) {
    j2[s][0] = true;
    for (std::size_t j = 0; j < k; ++j) {
      const int role = m.role(word[j], s);
      j1[s][j + 1] = role == 1;
      j2[s][j + 1] = role == 2;
    }
  }
  // Index contraction: per site, free cycles of Z tau_s, with Z the forward shift.
  std::vector<mpz_class> index_weight;
  for (const Permutation& tau : stab) {
    unsigned long exponent = 0;
    for (std::size_t s = 0; s < sites; ++s) {
      Permutation zt(len);
      for (std::size_t l = 0; l < len; ++l) zt[l] = ((j1[s][l] ? tau[l] : l) + 1) % len;
      for (const auto& cyc : cycles(zt)) {
        bool pinned = false;
        for (std::size_t l : cyc) pinned = pinned || j2[s][l];
        if (!pinned) ++exponent;
      }
    }
    mpz_class w;
    mpz_ui_pow_ui(w.get_mpz_t(), n, exponent);
    index_weight.push_back(w);
  }
  Complex total = 0;
  for (const Permutation& sigma : stab) {
    // Matrix contraction: normalized traces along the cycles of sigma^{-1},
    // with N^{#cycles(sigma_s)} restoring the unnormalized traces.
    const Permutation sigma_inv = inverse(sigma);
    Complex trace_part = 1;
    unsigned long trace_exponent = 0;
    for (const auto& cyc : cycles(sigma)) {
      if (cyc.front() == 0) continue;
      const std::size_t start = cyc.front();
      const Vertex v = word[start - 1];
      Matrix prod = elements[start - 1];
      for (std::size_t l = sigma_inv[start]; l != start; l = sigma_inv[l]) prod = prod * elements[l - 1];
      trace_part *= prod.trace() / static_cast<double>(prod.rows());
      trace_exponent += m.s1[v].size();
    }
    Rational coefficient = 0;
    for (std::size_t t = 0; t < stab.size(); ++t) {
      const Permutation alpha = compose(sigma, inverse(stab[t]));
      Rational wg = 1;
      for (std::size_t c = 0; c < classes.size(); ++c) wg *= tables[c].value(restrict_permutation(alpha, classes[c]));
      coefficient += wg * Rational(index_weight[t]);
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), n, trace_exponent);
    coefficient *= Rational(scale);
    total += coefficient.get_d() * trace_part;
  }
  return total;
}

Complex limit_moment(const SiteModel& m, const Coloring& word, const std::vector<Matrix>& elements) {
  MomentProblem p;
  p.graph = bigraph_of_sites(m);
  p.word = word;
  p.elements = elements;
  p.states.resize(m.vertex_count(), AlgebraState::trace_state(1));
  for (std::size_t j = 0; j < word.size(); ++j) {
    p.states.at(word[j]) = AlgebraState::trace_state(static_cast<std::size_t>(elements[j].rows()));
  }
  return joint_moment(p.graph, word, problem_functional(p), CumulantKind::Free);
}

ElementGenerator replicated_generator(std::vector<Matrix> patterns) {
  return [patterns = std::move(patterns)](std::size_t index, std::size_t dim) {
    const Matrix& x = patterns.at(index % patterns.size());
    const std::size_t r = static_cast<std::size_t>(x.rows());
    if (dim % r != 0) throw Error(ErrorCode::DimMismatch, "pattern size does not divide the active dimension");
    const std::size_t rep = dim / r;
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        out.block(i * rep, j * rep, rep, rep) = x(i, j) * Matrix::Identity(rep, rep);
      }
    }
    return out;
  };
}

std::vector<Matrix> generate_elements(const SiteModel& m, std::size_t n, const Coloring& word, const ElementGenerator& gen) {
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < word.size(); ++j) out.push_back(gen(j, active_dim(m, word[j], n)));
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

ConvergenceStudy convergence_study(const SiteModel& m, const Coloring& word, const ElementGenerator& gen,
                                   const std::vector<std::size_t>& ns, double floor) {
  ConvergenceStudy study;
  std::vector<double> xs, ys;
  study.vanishing_gap = true;
  for (std::size_t n : ns) {
    const std::vector<Matrix> elements = generate_elements(m, n, word, gen);
    ConvergenceRow row;
    row.n = n;
    row.exact = exact_expectation(m, n, word, elements);
    row.limit = limit_moment(m, word, elements);
    row.gap = std::abs(row.exact - row.limit);
    if (row.gap > floor * std::max(1.0, std::abs(row.limit))) {
      study.vanishing_gap = false;
    }
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::max(row.gap, 1e-300));
    study.rows.push_back(row);
  }
  study.slope = study.vanishing_gap ? std::nan("") : loglog_slope(xs, ys);
  return study;
}

}  // namespace bgi

#pragma once

#include <functional>
#include <random>
#include <vector>

#include "bgi/bigraph.hpp"
#include "bgi/common.hpp"

namespace bgi {

// Haar unitary: complex Ginibre QR with the phases of R's diagonal removed.
Matrix haar_unitary(std::size_t dim, std::mt19937_64& rng);

// Dimension N^{|S1_v|} of the active space of vertex v.
std::size_t active_dim(const SiteModel& m, Vertex v, std::size_t n);
std::size_t model_dim(const SiteModel& m, std::size_t n);

// lambda_v(b) = b on S1_v, the vacuum projection on S2_v, identity on S3_v,
// applied to a vector of (C^N)^{(x) S} without forming the dense operator.
Vector apply_embedded(const SiteModel& m, std::size_t n, Vertex v, const Matrix& b, const Vector& psi);
// Dense version of the same operator, for small models.
Matrix embed_dense(const SiteModel& m, std::size_t n, Vertex v, const Matrix& b);

// One draw of <xi, lambda(U A_1 U*) ... lambda(U A_k U*) xi> with one Haar
// unitary per vertex.
Complex sample_moment(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements,
                      std::mt19937_64& rng);

struct MonteCarloResult {
  Complex mean;
  double variance = 0;  // E|X - mean|^2
  double stderr_ = 0;
  std::size_t samples = 0;
};
// Sample i uses its own generator seeded from (seed, i).
MonteCarloResult monte_carlo(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements,
                             std::size_t samples, std::uint64_t seed);

// Exact finite-N expectation by Weingarten calculus over the stabilizer of
// the word augmented with a vacuum index 0.
Complex exact_expectation(const SiteModel& m, std::size_t n, const Coloring& word, const std::vector<Matrix>& elements);

// Sum over P(c, G(M)) of free cumulants with respect to normalized traces.
Complex limit_moment(const SiteModel& m, const Coloring& word, const std::vector<Matrix>& elements);

// Element j at active dimension D for a given N.
using ElementGenerator = std::function<Matrix(std::size_t index, std::size_t dim)>;
// Fixed r x r patterns replicated as X (x) I_{D/r}, so normalized trace
// moments do not depend on N.
ElementGenerator replicated_generator(std::vector<Matrix> patterns);
std::vector<Matrix> generate_elements(const SiteModel& m, std::size_t n, const Coloring& word, const ElementGenerator& gen);

struct ConvergenceRow {
  std::size_t n = 0;
  Complex exact, limit;
  double gap = 0;
};
struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  double slope = 0;             // least-squares slope of log gap against log N
  bool vanishing_gap = false;   // every gap at or below the absolute floor
};
ConvergenceStudy convergence_study(const SiteModel& m, const Coloring& word, const ElementGenerator& gen,
                                   const std::vector<std::size_t>& ns, double floor = 1e-12);

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bgi

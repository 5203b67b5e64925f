#pragma once

#include <map>
#include <vector>

#include "bgi/bigraph.hpp"
#include "bgi/common.hpp"
#include "bgi/partition.hpp"

namespace bgi {

// Permutation of {0..n-1} in one-line notation; composition is (a*b)(x) = a(b(x)).
using Permutation = std::vector<std::size_t>;
using CycleType = std::vector<std::size_t>;  // sorted descending

Permutation identity_permutation(std::size_t n);
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
std::vector<std::vector<std::size_t>> cycles(const Permutation& p);
std::size_t cycle_count(const Permutation& p);
CycleType cycle_type(const Permutation& p);
// Metric length |p| = n - #cycles.
std::size_t length(const Permutation& p);
std::vector<Permutation> all_permutations(std::size_t n);
std::vector<CycleType> integer_partitions(std::size_t n);
Permutation permutation_of_cycle_type(const CycleType& type);
CycleType parse_cycle_type(const std::string& text);
std::string to_string(const Rational& q);  // always "p/q"

// Unitary Weingarten function Wg(., D) on S_k as the inverse of the Gram
// matrix G(s,t) = D^{#cycles(s^{-1} t)}, solved exactly on conjugacy classes.
class WeingartenTable {
 public:
  WeingartenTable(std::size_t k, const mpz_class& dim);
  std::size_t order() const { return k_; }
  const mpz_class& dim() const { return dim_; }
  const Rational& value_of_type(const CycleType& type) const;
  const Rational& value(const Permutation& p) const { return value_of_type(cycle_type(p)); }

 private:
  std::size_t k_;
  mpz_class dim_;
  std::map<CycleType, Rational> values_;
};

Rational weingarten(const Permutation& p, const mpz_class& dim);

// Leading term mu(p) D^{-k-|p|} for a non-crossing permutation p.
struct AsymptoticTerm {
  Rational coefficient;
  long exponent = 0;
};
bool is_noncrossing_permutation(const Permutation& p);
AsymptoticTerm weingarten_asymptotic(const Permutation& p);
SetPartition cycle_partition(const Permutation& p);

// Permutations of the word positions preserving every color class.
std::vector<Permutation> stabilizer(const Coloring& word);
bool stabilizes(const Permutation& p, const Coloring& word);
Permutation restrict_permutation(const Permutation& p, const std::vector<std::size_t>& subset);
// Product over colors of Wg(alpha restricted to the class, N^{|S1_c|}).
Rational weingarten_tilde(const Permutation& alpha, const Coloring& word, const SiteModel& model, unsigned long n);

}  // namespace bgi

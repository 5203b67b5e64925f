#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bgi/compat.hpp"
#include "bgi/ncps.hpp"
#include "bgi/partition.hpp"

namespace bgi {

enum class CumulantKind { Free, Boolean, Classical };

const char* cumulant_kind_name(CumulantKind kind);

// Partitions of [n] in the lattice belonging to a cumulant kind:
// non-crossing, interval or all partitions.
std::vector<SetPartition> cumulant_lattice(CumulantKind kind, std::size_t n);
// Moebius value mu(p, 1_n) in that lattice.
Rational lattice_moebius_to_top(CumulantKind kind, const SetPartition& p);

// K_n(a_1..a_n) by explicit Moebius inversion of phi over the kind's lattice.
Complex cumulant(CumulantKind kind, const MomentFunctional& phi, std::size_t n);

// Memoised moments and cumulants over subsets (bitmasks) of the positions of a
// word; cumulants come from the recursive moment-cumulant relation.
class CumulantTable {
 public:
  CumulantTable(CumulantKind kind, MomentFunctional phi, std::size_t n);
  Complex moment(std::uint32_t mask);
  Complex cumulant(std::uint32_t mask);
  // Product of cumulants over the blocks of p.
  Complex partitioned(const SetPartition& p);

 private:
  CumulantKind kind_;
  MomentFunctional phi_;
  std::size_t n_;
  std::vector<std::optional<Complex>> moments_, cumulants_;
  std::map<std::size_t, std::vector<std::vector<std::uint32_t>>> lattice_masks_;
};

std::vector<std::size_t> mask_positions(std::uint32_t mask);

// The three equal expansions of a joint moment: free cumulants over P(c,G),
// Boolean over P(c,G)^0 and classical over P~(c,G).
Complex joint_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi, CumulantKind basis);
struct JointMomentReport {
  Complex free, boolean, classical;
  std::size_t n_free = 0, n_boolean = 0, n_classical = 0;
  double max_discrepancy() const;
};
JointMomentReport joint_moment_all(const Bigraph& g, const Coloring& c, const MomentFunctional& phi);

// Mixed Boolean cumulant as a sum of free cumulants over irreducible members
// of P(c,G), and independently by interval Moebius inversion of joint moments.
Complex mixed_boolean_cumulant(const Bigraph& g, const Coloring& c, const MomentFunctional& phi);
Complex mixed_boolean_cumulant_by_inversion(const Bigraph& g, const Coloring& c, const MomentFunctional& phi);

// Regime where E2 contains E1 n E1^T minus the diagonal: the moment is the
// product of states over the blocks of the kernel below.
bool is_bmt_regime(const Bigraph& g);
SetPartition bmt_kernel(const Bigraph& g, const Coloring& c);
Complex bmt_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi);

// Regime E1 = V x V: sum over partitions below ker(c) whose crossing blocks
// are E2-related.
bool is_epsilon_regime(const Bigraph& g);
std::vector<SetPartition> epsilon_partitions(const Bigraph& g, const Coloring& c);
Complex epsilon_moment(const Bigraph& g, const Coloring& c, const MomentFunctional& phi);

// Both sides of the product formula for runs of consecutive equal colors:
// lhs expands the long word, rhs uses the run products b_i.
struct ProductFormulaResult {
  Complex lhs, rhs;
};
ProductFormulaResult product_formula_check(const Bigraph& g, const Coloring& c, const std::vector<std::size_t>& run_lengths,
                                           const std::vector<AlgebraState>& states, const std::vector<Matrix>& elements);

// Joint moment under a composed bigraph, computed directly and through the
// outer graph with inner joint moments as the grouped states.
struct AssociativityResult {
  Complex direct, nested;
};
AssociativityResult associativity_check(const Bigraph& outer, const std::vector<Bigraph>& inner, const Coloring& c,
                                        const std::vector<AlgebraState>& states, const std::vector<Matrix>& elements);

}  // namespace bgi

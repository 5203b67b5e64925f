#pragma once

#include <functional>
#include <vector>

#include "bgi/bigraph.hpp"
#include "bgi/partition.hpp"

namespace bgi {

// Full: P(c,G); Zero: P(c,G)^0 (no unobstructed nesting); Tilde: same-color
// crossings allowed, i.e. E2 u Diagonal in the crossing condition.
enum class CompatClass { Full, Zero, Tilde };

const char* compat_class_name(CompatClass cls);

void check_coloring(const Coloring& c, const Bigraph& g);

bool is_monochromatic(const SetPartition& p, const Coloring& c);
bool is_compatible(const SetPartition& p, const Coloring& c, const Bigraph& g, CompatClass cls = CompatClass::Full);

// Enumerates the class, restricting each color class first and then merging.
void for_each_compatible(const Coloring& c, const Bigraph& g, CompatClass cls,
                         const std::function<void(const SetPartition&)>& visit);
std::vector<SetPartition> enumerate_compatible(const Coloring& c, const Bigraph& g, CompatClass cls = CompatClass::Full);

// Irreducible members of P(c,G).
std::vector<SetPartition> enumerate_irreducible(const Coloring& c, const Bigraph& g);

// Block b2 nested in block b1 (b1 < b2 in the nesting order).
bool nested(const SetPartition& p, std::size_t b1, std::size_t b2);
bool unobstructed_nesting(const SetPartition& p, const Coloring& c, const Bigraph& g, std::size_t b1, std::size_t b2);
// Smallest element of P(c,G)^0 above p: blocks grouped by their outermost
// unobstructed encloser m(B).
SetPartition envelope_zero(const SetPartition& p, const Coloring& c, const Bigraph& g);

// A partition described as an outer partition with one inner partition per
// outer block (each on [|B|]).
struct Decomposition {
  SetPartition outer;
  std::vector<SetPartition> parts;
};
SetPartition recompose(const Decomposition& d);
// P(c,G) -> sigma in P(c,G)^0 with NC-irreducible parts.
Decomposition decompose_zero(const SetPartition& p, const Coloring& c, const Bigraph& g);
// P~(c,G) -> sigma in P(c,G) with connected parts.
Decomposition decompose_tilde(const SetPartition& p, const Coloring& c, const Bigraph& g);
// P(c, G~(G1..Gm)) -> sigma in P(c~,G~)^0 with parts irreducible in the inner graphs.
Decomposition decompose_operad(const SetPartition& p, const Coloring& c, const Composition& comp,
                               const Bigraph& outer, const std::vector<Bigraph>& inner);
Coloring outer_coloring(const Coloring& c, const Composition& comp);

// Bigraph on the blocks of p: (B,B') in E1 when B' meets the hull of B,
// E2 = E1 n E1^T minus the diagonal.
Bigraph bigraph_of_partition(const SetPartition& p);
// Whether the block coloring is a bigraph morphism G(p) -> G.
bool is_morphism(const SetPartition& p, const Coloring& c, const Bigraph& g);

// ---- Unfinished partitions. Indices here are in application order: index 0
// is the first operator applied to the vacuum, i.e. the reverse of product
// order. Unfinished blocks extend past the last index.
struct Step {
  int delta = 0;    // 1: output lies in the reduced space
  int epsilon = 0;  // 1: input lies in the reduced space
  bool operator==(const Step& o) const { return delta == o.delta && epsilon == o.epsilon; }
};

struct UnfinishedPartition {
  SetPartition partition;
  std::vector<bool> unfinished;  // per block
  bool operator==(const UnfinishedPartition& o) const {
    return partition == o.partition && unfinished == o.unfinished;
  }
};

std::vector<int> path_heights(const std::vector<Step>& steps);
// Single-color bijection between valid paths and unfinished NC partitions.
UnfinishedPartition path_to_unfinished(const std::vector<Step>& steps);
std::vector<Step> unfinished_to_path(const UnfinishedPartition& u);
// Applies the bijection inside each color class.
UnfinishedPartition colored_path_to_unfinished(const std::vector<Step>& steps, const Coloring& c);
bool is_valid_colored_path(const std::vector<Step>& steps, const Coloring& c);
// NC after closing every unfinished block at a virtual point past the end
// (later blocks closing first).
bool is_unfinished_noncrossing(const UnfinishedPartition& u);
bool is_unfinished_compatible(const UnfinishedPartition& u, const Coloring& c, const Bigraph& g, bool zero);

}  // namespace bgi

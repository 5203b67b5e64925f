#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bgi/common.hpp"

namespace bgi {

// A set partition of {0,..,n-1}. Blocks are kept sorted internally and
// ordered by their minimum, so `labels()` is the restricted growth string.
class SetPartition {
 public:
  SetPartition() = default;
  static SetPartition from_labels(const std::vector<int>& labels);
  static SetPartition from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks);
  static SetPartition singletons(std::size_t n);
  static SetPartition one_block(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }
  int block_of(std::size_t i) const { return labels_[i]; }
  bool same_block(std::size_t i, std::size_t j) const { return labels_[i] == labels_[j]; }

  // Bitmask of a block (n <= 32).
  std::uint32_t block_mask(std::size_t b) const;

  bool operator==(const SetPartition& o) const { return labels_ == o.labels_; }
  bool operator<(const SetPartition& o) const { return labels_ < o.labels_; }

 private:
  std::vector<int> labels_;
  std::vector<std::vector<std::size_t>> blocks_;
};

// Text format "13|2|4" with 1-based elements; elements are comma separated
// inside a block when n > 9 ("1,10|2").
std::string to_string(const SetPartition& p);
SetPartition parse_partition(const std::string& text, std::size_t n);

// Visits every set partition of [n] in restricted-growth-string order.
// `prune(prefix)` may return true to cut the subtree below a prefix of labels.
void for_each_partition(std::size_t n, const std::function<void(const SetPartition&)>& visit,
                        const std::function<bool(const std::vector<int>&, std::size_t)>& prune = {});
std::vector<SetPartition> enumerate_all(std::size_t n);
std::vector<SetPartition> enumerate_noncrossing(std::size_t n);
std::vector<SetPartition> enumerate_interval(std::size_t n);

// Pairwise block relations used throughout: crossing and nesting.
enum class BlockRelation { Disjoint, Crossing, Nested, Encloses };
// Relation of block a to block b: Nested means a lies inside a gap of b,
// Encloses means b lies inside a gap of a.
BlockRelation block_relation(const SetPartition& p, std::size_t a, std::size_t b);
bool blocks_cross(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);
// True when b lies strictly between two consecutive elements of a.
bool block_nested_in(const std::vector<std::size_t>& b, const std::vector<std::size_t>& a);

bool is_noncrossing(const SetPartition& p);
bool is_interval(const SetPartition& p);
// Irreducible: 1 and n are connected through the nesting/crossing hull,
// i.e. the interval envelope is the single block.
bool is_irreducible(const SetPartition& p);
// Connected: the crossing graph of the blocks is connected.
bool is_connected(const SetPartition& p);

// Refinement order: a <= b when every block of a lies in a block of b.
bool leq(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);

SetPartition interval_envelope(const SetPartition& p);
SetPartition nc_envelope(const SetPartition& p);
// Envelope computed separately inside each color class.
SetPartition colorwise_nc_envelope(const SetPartition& p, const Coloring& c);
SetPartition kernel(const Coloring& c);

// Restriction of p to a sorted subset, relabelled onto [|subset|].
SetPartition restrict_to(const SetPartition& p, const std::vector<std::size_t>& subset);
// Partition of [n] whose blocks are parts[b] lifted along outer block b.
SetPartition lift(const SetPartition& outer, const std::vector<SetPartition>& parts);

// Mirror image i -> n-1-i.
SetPartition reversed(const SetPartition& p);
Coloring reversed(const Coloring& c);

// Kreweras complement in NC(n): cycles of sigma^{-1} gamma, gamma = (1 2 .. n).
SetPartition kreweras(const SetPartition& p);

// Moebius function of NC(n) on an interval [a, b].
Rational moebius_nc(const SetPartition& a, const SetPartition& b);
Rational catalan(std::size_t n);

}  // namespace bgi

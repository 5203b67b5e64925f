#include "bgi/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bgi {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxEnumeration) {
    throw Error(ErrorCode::SizeGuard, "partition enumeration limited to n <= 12, got " + std::to_string(n));
  }
}

// Small union-find used by the envelope and join constructions.
struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

SetPartition from_union_find(DisjointSets& ds) {
  std::vector<int> raw(ds.parent.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = static_cast<int>(ds.find(i));
  return SetPartition::from_labels(raw);
}

// True when the first `len` labels contain a crossing pattern a<b<c<d with
// labels L M L M. Only patterns ending at len-1 need checking when growing.
bool prefix_crosses_at(const std::vector<int>& labels, std::size_t len) {
  const std::size_t d = len - 1;
  const int m = labels[d];
  for (std::size_t c = d; c-- > 0;) {
    const int l = labels[c];
    if (l == m) continue;
    for (std::size_t b = c; b-- > 0;) {
      if (labels[b] != m) continue;
      for (std::size_t a = b; a-- > 0;) {
        if (labels[a] == l) return true;
      }
    }
  }
  return false;
}

void rgs_recurse(std::vector<int>& labels, std::size_t pos, int max_label,
                 const std::function<void(const SetPartition&)>& visit,
                 const std::function<bool(const std::vector<int>&, std::size_t)>& prune) {
  if (pos == labels.size()) {
    visit(SetPartition::from_labels(labels));
    return;
  }
  for (int l = 0; l <= max_label + 1; ++l) {
    labels[pos] = l;
    if (prune && prune(labels, pos + 1)) continue;
    rgs_recurse(labels, pos + 1, std::max(max_label, l), visit, prune);
  }
}

}  // namespace

SetPartition SetPartition::from_labels(const std::vector<int>& raw) {
  // Relabel in order of first appearance so the result is canonical.
  SetPartition p;
  p.labels_.resize(raw.size());
  std::vector<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int label = -1;
    for (auto& [from, to] : seen) {
      if (from == raw[i]) label = to;
    }
    if (label < 0) {
      label = static_cast<int>(seen.size());
      seen.emplace_back(raw[i], label);
      p.blocks_.emplace_back();
    }
    p.labels_[i] = label;
    p.blocks_[label].push_back(i);
  }
  return p;
}

SetPartition SetPartition::from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
  std::vector<int> raw(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i : blocks[b]) {
      if (i >= n || raw[i] >= 0) throw Error(ErrorCode::ParseError, "blocks do not partition [n]");
      raw[i] = static_cast<int>(b);
    }
  }
  for (int r : raw) {
    if (r < 0) throw Error(ErrorCode::ParseError, "blocks do not cover [n]");
  }
  return from_labels(raw);
}

SetPartition SetPartition::singletons(std::size_t n) {
  std::vector<int> raw(n);
  std::iota(raw.begin(), raw.end(), 0);
  return from_labels(raw);
}

SetPartition SetPartition::one_block(std::size_t n) { return from_labels(std::vector<int>(n, 0)); }

std::uint32_t SetPartition::block_mask(std::size_t b) const {
  std::uint32_t m = 0;
  for (std::size_t i : blocks_[b]) m |= 1u << i;
  return m;
}

std::string to_string(const SetPartition& p) {
  std::ostringstream out;
  const bool commas = p.size() > 9;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (b) out << '|';
    for (std::size_t j = 0; j < p.block(b).size(); ++j) {
      if (commas && j) out << ',';
      out << p.block(b)[j] + 1;
    }
  }
  return out.str();
}

SetPartition parse_partition(const std::string& text, std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks;
  std::stringstream whole(text);
  std::string chunk;
  while (std::getline(whole, chunk, '|')) {
    std::vector<std::size_t> block;
    if (n > 9) {
      std::stringstream items(chunk);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.empty()) throw Error(ErrorCode::ParseError, "empty element in '" + text + "'");
        block.push_back(std::stoul(item) - 1);
      }
    } else {
      for (char ch : chunk) {
        if (ch < '1' || ch > '9') throw Error(ErrorCode::ParseError, "bad element in '" + text + "'");
        block.push_back(static_cast<std::size_t>(ch - '1'));
      }
    }
    if (block.empty()) throw Error(ErrorCode::ParseError, "empty block in '" + text + "'");
    blocks.push_back(block);
  }
  return SetPartition::from_blocks(n, blocks);
}

void for_each_partition(std::size_t n, const std::function<void(const SetPartition&)>& visit,
                        const std::function<bool(const std::vector<int>&, std::size_t)>& prune) {
  check_size(n);
  if (n == 0) {
    visit(SetPartition{});
    return;
  }
  std::vector<int> labels(n, 0);
  rgs_recurse(labels, 1, 0, visit, prune);
}

std::vector<SetPartition> enumerate_all(std::size_t n) {
  std::vector<SetPartition> out;
  for_each_partition(n, [&](const SetPartition& p) { out.push_back(p); });
  return out;
}

std::vector<SetPartition> enumerate_noncrossing(std::size_t n) {
  std::vector<SetPartition> out;
  for_each_partition(
      n, [&](const SetPartition& p) { out.push_back(p); },
      [](const std::vector<int>& labels, std::size_t len) { return prefix_crosses_at(labels, len); });
  return out;
}

std::vector<SetPartition> enumerate_interval(std::size_t n) {
  std::vector<SetPartition> out;
  for_each_partition(
      n, [&](const SetPartition& p) { out.push_back(p); },
      [](const std::vector<int>& labels, std::size_t len) {
        // A label may only repeat the label of its left neighbour or open a new block.
        const std::size_t i = len - 1;
        if (i == 0) return false;
        const int prev_max = *std::max_element(labels.begin(), labels.begin() + i);
        return labels[i] != labels[i - 1] && labels[i] != prev_max + 1;
      });
  return out;
}

bool blocks_cross(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  // Any crossing a1 < b1 < a2 < b2 (or mirrored) puts an element of b strictly
  // inside hull(a); then b crosses a unless all of b sits in one gap of a.
  auto gap_of = [&](std::size_t y) { return std::upper_bound(a.begin(), a.end(), y) - a.begin(); };
  bool inside = false;
  for (std::size_t x : b) inside = inside || (x > a.front() && x < a.back());
  if (!inside) return false;
  const auto g = gap_of(b.front());
  for (std::size_t y : b) {
    if (gap_of(y) != g) return true;
  }
  return false;
}

bool block_nested_in(const std::vector<std::size_t>& b, const std::vector<std::size_t>& a) {
  if (b.front() < a.front() || b.back() > a.back()) return false;
  auto gap = std::upper_bound(a.begin(), a.end(), b.front());
  if (gap == a.begin() || gap == a.end()) return false;
  for (std::size_t y : b) {
    if (std::upper_bound(a.begin(), a.end(), y) != gap) return false;
    if (std::binary_search(a.begin(), a.end(), y)) return false;
  }
  return true;
}

BlockRelation block_relation(const SetPartition& p, std::size_t a, std::size_t b) {
  const auto& A = p.block(a);
  const auto& B = p.block(b);
  if (blocks_cross(A, B)) return BlockRelation::Crossing;
  if (block_nested_in(A, B)) return BlockRelation::Nested;
  if (block_nested_in(B, A)) return BlockRelation::Encloses;
  return BlockRelation::Disjoint;
}

bool is_noncrossing(const SetPartition& p) {
  for (std::size_t a = 0; a < p.block_count(); ++a) {
    for (std::size_t b = a + 1; b < p.block_count(); ++b) {
      if (blocks_cross(p.block(a), p.block(b))) return false;
    }
  }
  return true;
}

bool is_interval(const SetPartition& p) {
  for (const auto& B : p.blocks()) {
    if (B.back() - B.front() + 1 != B.size()) return false;
  }
  return true;
}

bool is_irreducible(const SetPartition& p) { return interval_envelope(p).block_count() <= 1; }

bool is_connected(const SetPartition& p) { return nc_envelope(p).block_count() <= 1; }

bool leq(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::NotComparable, "partitions of different sizes");
  for (const auto& B : a.blocks()) {
    for (std::size_t i : B) {
      if (!b.same_block(i, B.front())) return false;
    }
  }
  return true;
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::NotComparable, "partitions of different sizes");
  DisjointSets ds(a.size());
  for (const auto* p : {&a, &b}) {
    for (const auto& B : p->blocks()) {
      for (std::size_t i : B) ds.unite(B.front(), i);
    }
  }
  return from_union_find(ds);
}

SetPartition interval_envelope(const SetPartition& p) {
  const std::size_t n = p.size();
  DisjointSets ds(n);
  for (const auto& B : p.blocks()) {
    for (std::size_t i = B.front(); i <= B.back(); ++i) ds.unite(B.front(), i);
  }
  return from_union_find(ds);
}

SetPartition nc_envelope(const SetPartition& p) {
  SetPartition cur = p;
  for (;;) {
    bool merged = false;
    for (std::size_t a = 0; a < cur.block_count() && !merged; ++a) {
      for (std::size_t b = a + 1; b < cur.block_count() && !merged; ++b) {
        if (blocks_cross(cur.block(a), cur.block(b))) {
          std::vector<int> raw = cur.labels();
          for (int& l : raw) {
            if (l == static_cast<int>(b)) l = static_cast<int>(a);
          }
          cur = SetPartition::from_labels(raw);
          merged = true;
        }
      }
    }
    if (!merged) return cur;
  }
}

SetPartition kernel(const Coloring& c) {
  std::vector<int> raw(c.begin(), c.end());
  return SetPartition::from_labels(raw);
}

SetPartition colorwise_nc_envelope(const SetPartition& p, const Coloring& c) {
  if (c.size() != p.size()) throw Error(ErrorCode::ArityMismatch, "coloring and partition sizes differ");
  const SetPartition ker = kernel(c);
  if (!leq(p, ker)) throw Error(ErrorCode::NotMonochromatic, "partition is not monochromatic");
  std::vector<SetPartition> parts;
  for (const auto& C : ker.blocks()) parts.push_back(nc_envelope(restrict_to(p, C)));
  return lift(ker, parts);
}

SetPartition restrict_to(const SetPartition& p, const std::vector<std::size_t>& subset) {
  std::vector<int> raw;
  raw.reserve(subset.size());
  for (std::size_t i : subset) raw.push_back(p.block_of(i));
  return SetPartition::from_labels(raw);
}

SetPartition lift(const SetPartition& outer, const std::vector<SetPartition>& parts) {
  if (parts.size() != outer.block_count()) throw Error(ErrorCode::ArityMismatch, "one part per outer block required");
  std::vector<int> raw(outer.size());
  int offset = 0;
  for (std::size_t b = 0; b < outer.block_count(); ++b) {
    const auto& B = outer.block(b);
    if (parts[b].size() != B.size()) throw Error(ErrorCode::ArityMismatch, "part size differs from block size");
    for (std::size_t j = 0; j < B.size(); ++j) raw[B[j]] = offset + parts[b].block_of(j);
    offset += static_cast<int>(parts[b].block_count());
  }
  return SetPartition::from_labels(raw);
}

SetPartition reversed(const SetPartition& p) {
  std::vector<int> raw(p.labels().rbegin(), p.labels().rend());
  return SetPartition::from_labels(raw);
}

Coloring reversed(const Coloring& c) { return Coloring(c.rbegin(), c.rend()); }

SetPartition kreweras(const SetPartition& p) {
  if (!is_noncrossing(p)) throw Error(ErrorCode::NotNonCrossing, "Kreweras complement needs a non-crossing partition");
  const std::size_t n = p.size();
  // sigma maps each element to the next element of its block (cyclically).
  std::vector<std::size_t> sigma(n), sigma_inv(n);
  for (const auto& B : p.blocks()) {
    for (std::size_t j = 0; j < B.size(); ++j) sigma[B[j]] = B[(j + 1) % B.size()];
  }
  for (std::size_t i = 0; i < n; ++i) sigma_inv[sigma[i]] = i;
  DisjointSets ds(n);
  for (std::size_t i = 0; i < n; ++i) ds.unite(i, sigma_inv[(i + 1) % n]);
  return from_union_find(ds);
}

Rational catalan(std::size_t n) {
  mpz_class c = 1;
  for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return Rational(c);
}

Rational moebius_nc(const SetPartition& a, const SetPartition& b) {
  if (!is_noncrossing(a) || !is_noncrossing(b)) throw Error(ErrorCode::NotNonCrossing, "moebius_nc needs non-crossing partitions");
  if (!leq(a, b)) throw Error(ErrorCode::NotComparable, "moebius_nc needs a <= b");
  // [a, b] factors over blocks of b; each factor [a|B, 1] is anti-isomorphic
  // to [0, Kr(a|B)], a product of full lattices NC(m).
  Rational mu = 1;
  for (const auto& B : b.blocks()) {
    const SetPartition kr = kreweras(restrict_to(a, B));
    for (const auto& C : kr.blocks()) {
      const std::size_t m = C.size();
      Rational f = catalan(m - 1);
      if ((m - 1) % 2) f = -f;
      mu *= f;
    }
  }
  return mu;
}

}  // namespace bgi

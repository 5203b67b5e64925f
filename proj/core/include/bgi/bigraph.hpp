#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgi/common.hpp"

namespace bgi {

// Kind of an ordered pair of distinct vertices (v, w).
enum class PairKind { Boolean, Monotone, AntiMonotone, Free, Tensor };

const char* pair_kind_name(PairKind kind);
PairKind parse_pair_kind(const std::string& name);

using Edge = std::pair<std::string, std::string>;

// A bigraph G = (V, E1, E2): E1 reflexive, E2 irreflexive and symmetric.
// Vertices keep their insertion order, which is also the dense index order.
class Bigraph {
 public:
  Bigraph() = default;
  static Bigraph validate(std::vector<std::string> vertices, const std::vector<Edge>& edges1,
                          const std::vector<Edge>& edges2);
  // Bigraph on n anonymous vertices "1".."n" built from dense adjacency.
  static Bigraph from_adjacency(std::vector<std::string> vertices, std::vector<std::uint8_t> e1,
                                std::vector<std::uint8_t> e2);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& vertices() const { return names_; }
  const std::string& name(Vertex v) const { return names_[v]; }
  std::optional<Vertex> find(const std::string& name) const;
  Vertex index_of(const std::string& name) const;  // throws UnknownVertex

  bool e1(Vertex v, Vertex w) const { return e1_[v * size() + w] != 0; }
  bool e2(Vertex v, Vertex w) const { return e2_[v * size() + w] != 0; }
  // The tensor relation E1 n E1^T n E2, i.e. letters that commute in words.
  bool tensor(Vertex v, Vertex w) const { return e2(v, w) && e1(v, w) && e1(w, v); }

  std::vector<Edge> edges1() const;
  std::vector<Edge> edges2() const;  // both orientations

  // Structural equality on dense indices (names ignored).
  bool same_shape(const Bigraph& o) const { return e1_ == o.e1_ && e2_ == o.e2_; }
  bool operator==(const Bigraph& o) const { return names_ == o.names_ && same_shape(o); }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> e1_, e2_;
};

PairKind classify_pair(const Bigraph& g, Vertex v, Vertex w);
// Replaces E2 by E2 n (E1 n E1^T), which leaves every compatible set unchanged.
Bigraph normalize_e2(const Bigraph& g);
bool is_normalized(const Bigraph& g);
Bigraph induced_subbigraph(const Bigraph& g, const std::vector<Vertex>& subset);
// Builds G from a kind for every ordered pair of distinct vertices. Missing
// reverse orientations are inferred; contradictory ones are rejected.
Bigraph from_pairwise(const std::vector<std::string>& vertices,
                      const std::map<std::pair<std::string, std::string>, PairKind>& kinds);

// Result of an operad composition: composed graph and the block map.
struct Composition {
  Bigraph composed;
  std::vector<std::size_t> outer_of;  // composed vertex -> outer vertex
  std::vector<Vertex> inner_of;       // composed vertex -> vertex of inner graph
  std::vector<std::size_t> offset;    // first composed vertex of each outer vertex
};

// G~(G1,..,Gm): inner edges are copied inside blocks; across blocks an edge
// (j v, j' w) lies in E_i exactly when (j, j') lies in E~_i.
Composition operad_compose(const Bigraph& outer, const std::vector<Bigraph>& inner);
Bigraph operad_identity();
// Symmetric-group action: (v, w) in E_i  =>  (sigma^{-1} v, sigma^{-1} w) in E_i.
Bigraph permute(const Bigraph& g, const std::vector<std::size_t>& sigma);

// Site model: for each vertex a partition S = S1 u S2 u S3 of a site set with
// S1 nonempty (active, projected, identity sites).
struct SiteModel {
  std::vector<std::string> vertices;
  std::vector<std::string> sites;
  std::vector<std::vector<std::size_t>> s1, s2, s3;  // sorted site indices per vertex

  static SiteModel validate(std::vector<std::string> vertices, std::vector<std::string> sites,
                            std::vector<std::vector<std::size_t>> s1, std::vector<std::vector<std::size_t>> s2);
  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t site_count() const { return sites.size(); }
  // Role of site s for vertex v: 1, 2 or 3.
  int role(Vertex v, std::size_t s) const;
};

// E1 = {(v,w): S1_v n S2_w empty}, E2 = {(v,w): S1_v n S1_w empty}.
Bigraph bigraph_of_sites(const SiteModel& m);
// Canonical realization on the sites V x V.
SiteModel realize_sites(const Bigraph& g);

}  // namespace bgi

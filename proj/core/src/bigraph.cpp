#include "bgi/bigraph.hpp"

#include <algorithm>
#include <set>

namespace bgi {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DiagonalMissing: return "DiagonalMissing";
    case ErrorCode::SelfLoopInE2: return "SelfLoopInE2";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::SamePair: return "SamePair";
    case ErrorCode::InconsistentKinds: return "InconsistentKinds";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EmptyS1: return "EmptyS1";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::NotNonCrossing: return "NotNonCrossing";
    case ErrorCode::NotComparable: return "NotComparable";
    case ErrorCode::NotMonochromatic: return "NotMonochromatic";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::NotComposition: return "NotComposition";
    case ErrorCode::NegativeHeight: return "NegativeHeight";
    case ErrorCode::ZeroPlateauViolation: return "ZeroPlateauViolation";
    case ErrorCode::VertexMismatch: return "VertexMismatch";
    case ErrorCode::NotBMTRegime: return "NotBMTRegime";
    case ErrorCode::NotEpsilonRegime: return "NotEpsilonRegime";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::TruncationOverflow: return "TruncationOverflow";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::NotStabilizing: return "NotStabilizing";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

const char* pair_kind_name(PairKind kind) {
  switch (kind) {
    case PairKind::Boolean: return "boolean";
    case PairKind::Monotone: return "monotone";
    case PairKind::AntiMonotone: return "antimonotone";
    case PairKind::Free: return "free";
    case PairKind::Tensor: return "tensor";
  }
  return "unknown";
}

PairKind parse_pair_kind(const std::string& name) {
  for (PairKind k : {PairKind::Boolean, PairKind::Monotone, PairKind::AntiMonotone, PairKind::Free, PairKind::Tensor}) {
    if (name == pair_kind_name(k)) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown pair kind '" + name + "'");
}

Bigraph Bigraph::from_adjacency(std::vector<std::string> vertices, std::vector<std::uint8_t> e1,
                                std::vector<std::uint8_t> e2) {
  const std::size_t n = vertices.size();
  if (e1.size() != n * n || e2.size() != n * n) throw Error(ErrorCode::ArityMismatch, "adjacency size mismatch");
  std::set<std::string> unique(vertices.begin(), vertices.end());
  if (unique.size() != n) throw Error(ErrorCode::ParseError, "duplicate vertex id");
  for (std::size_t v = 0; v < n; ++v) {
    if (!e1[v * n + v]) throw Error(ErrorCode::DiagonalMissing, "E1 lacks (" + vertices[v] + "," + vertices[v] + ")");
    if (e2[v * n + v]) throw Error(ErrorCode::SelfLoopInE2, "E2 contains (" + vertices[v] + "," + vertices[v] + ")");
  }
  Bigraph g;
  g.names_ = std::move(vertices);
  g.e1_ = std::move(e1);
  g.e2_ = std::move(e2);
  // E2 is symmetric by definition; a single orientation is enough as input.
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (g.e2_[v * n + w]) g.e2_[w * n + v] = 1;
    }
  }
  return g;
}

Bigraph Bigraph::validate(std::vector<std::string> vertices, const std::vector<Edge>& edges1,
                          const std::vector<Edge>& edges2) {
  const std::size_t n = vertices.size();
  auto index = [&](const std::string& s) {
    auto it = std::find(vertices.begin(), vertices.end(), s);
    if (it == vertices.end()) throw Error(ErrorCode::UnknownVertex, "vertex '" + s + "' not declared");
    return static_cast<std::size_t>(it - vertices.begin());
  };
  std::vector<std::uint8_t> e1(n * n, 0), e2(n * n, 0);
  for (const auto& [v, w] : edges1) e1[index(v) * n + index(w)] = 1;
  for (const auto& [v, w] : edges2) {
    const std::size_t a = index(v), b = index(w);
    e2[a * n + b] = e2[b * n + a] = 1;
  }
  return from_adjacency(std::move(vertices), std::move(e1), std::move(e2));
}

std::optional<Vertex> Bigraph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Vertex>(it - names_.begin());
}

Vertex Bigraph::index_of(const std::string& name) const {
  if (auto v = find(name)) return *v;
  throw Error(ErrorCode::UnknownVertex, "vertex '" + name + "' not in bigraph");
}

std::vector<Edge> Bigraph::edges1() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < size(); ++v) {
    for (Vertex w = 0; w < size(); ++w) {
      if (e1(v, w)) out.emplace_back(names_[v], names_[w]);
    }
  }
  return out;
}

std::vector<Edge> Bigraph::edges2() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < size(); ++v) {
    for (Vertex w = 0; w < size(); ++w) {
      if (e2(v, w)) out.emplace_back(names_[v], names_[w]);
    }
  }
  return out;
}

PairKind classify_pair(const Bigraph& g, Vertex v, Vertex w) {
  if (v >= g.size() || w >= g.size()) throw Error(ErrorCode::UnknownVertex, "vertex index out of range");
  if (v == w) throw Error(ErrorCode::SamePair, "pair kinds are defined for distinct vertices");
  const bool forward = g.e1(v, w), backward = g.e1(w, v);
  if (!forward && !backward) return PairKind::Boolean;
  if (forward && !backward) return PairKind::Monotone;
  if (!forward && backward) return PairKind::AntiMonotone;
  return g.e2(v, w) ? PairKind::Tensor : PairKind::Free;
}

Bigraph normalize_e2(const Bigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::uint8_t> e1(n * n), e2(n * n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      e1[v * n + w] = g.e1(v, w);
      e2[v * n + w] = g.tensor(v, w);
    }
  }
  return Bigraph::from_adjacency(g.vertices(), std::move(e1), std::move(e2));
}

bool is_normalized(const Bigraph& g) { return normalize_e2(g) == g; }

Bigraph induced_subbigraph(const Bigraph& g, const std::vector<Vertex>& subset) {
  const std::size_t n = subset.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> e1(n * n), e2(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (subset[a] >= g.size()) throw Error(ErrorCode::UnknownVertex, "vertex index out of range");
    names.push_back(g.name(subset[a]));
    for (std::size_t b = 0; b < n; ++b) {
      e1[a * n + b] = g.e1(subset[a], subset[b]);
      e2[a * n + b] = g.e2(subset[a], subset[b]);
    }
  }
  return Bigraph::from_adjacency(std::move(names), std::move(e1), std::move(e2));
}

Bigraph from_pairwise(const std::vector<std::string>& vertices,
                      const std::map<std::pair<std::string, std::string>, PairKind>& kinds) {
  const std::size_t n = vertices.size();
  auto index = [&](const std::string& s) {
    auto it = std::find(vertices.begin(), vertices.end(), s);
    if (it == vertices.end()) throw Error(ErrorCode::UnknownVertex, "vertex '" + s + "' not declared");
    return static_cast<std::size_t>(it - vertices.begin());
  };
  auto mirror = [](PairKind k) {
    if (k == PairKind::Monotone) return PairKind::AntiMonotone;
    if (k == PairKind::AntiMonotone) return PairKind::Monotone;
    return k;
  };
  std::vector<std::optional<PairKind>> kind(n * n);
  for (const auto& [pair, k] : kinds) {
    const std::size_t v = index(pair.first), w = index(pair.second);
    if (v == w) throw Error(ErrorCode::SamePair, "pair (" + pair.first + "," + pair.second + ")");
    for (auto [slot, value] : {std::pair{v * n + w, k}, std::pair{w * n + v, mirror(k)}}) {
      if (kind[slot] && *kind[slot] != value) {
        throw Error(ErrorCode::InconsistentKinds, "pair (" + pair.first + "," + pair.second + ") has conflicting kinds");
      }
      kind[slot] = value;
    }
  }
  std::vector<std::uint8_t> e1(n * n, 0), e2(n * n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    e1[v * n + v] = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (v == w) continue;
      if (!kind[v * n + w]) {
        throw Error(ErrorCode::InconsistentKinds, "no kind given for (" + vertices[v] + "," + vertices[w] + ")");
      }
      const PairKind k = *kind[v * n + w];
      e1[v * n + w] = k == PairKind::Monotone || k == PairKind::Free || k == PairKind::Tensor;
      e2[v * n + w] = k == PairKind::Tensor;
    }
  }
  return Bigraph::from_adjacency(vertices, std::move(e1), std::move(e2));
}

Composition operad_compose(const Bigraph& outer, const std::vector<Bigraph>& inner) {
  if (inner.size() != outer.size()) {
    throw Error(ErrorCode::ArityMismatch, "outer bigraph has " + std::to_string(outer.size()) + " vertices but " +
                                              std::to_string(inner.size()) + " inner bigraphs were given");
  }
  Composition out;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < inner.size(); ++j) {
    out.offset.push_back(names.size());
    for (Vertex v = 0; v < inner[j].size(); ++v) {
      names.push_back(outer.name(j) + "/" + inner[j].name(v));
      out.outer_of.push_back(j);
      out.inner_of.push_back(v);
    }
  }
  const std::size_t n = names.size();
  std::vector<std::uint8_t> e1(n * n), e2(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ja = out.outer_of[a], jb = out.outer_of[b];
      if (ja == jb) {
        e1[a * n + b] = inner[ja].e1(out.inner_of[a], out.inner_of[b]);
        e2[a * n + b] = inner[ja].e2(out.inner_of[a], out.inner_of[b]);
      } else {
        e1[a * n + b] = outer.e1(ja, jb);
        e2[a * n + b] = outer.e2(ja, jb);
      }
    }
  }
  out.composed = Bigraph::from_adjacency(std::move(names), std::move(e1), std::move(e2));
  return out;
}

Bigraph operad_identity() { return Bigraph::validate({"1"}, {{"1", "1"}}, {}); }

Bigraph permute(const Bigraph& g, const std::vector<std::size_t>& sigma) {
  const std::size_t n = g.size();
  if (sigma.size() != n) throw Error(ErrorCode::ArityMismatch, "permutation size differs from vertex count");
  std::vector<std::size_t> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma[i] >= n || inv[sigma[i]] != n) throw Error(ErrorCode::ArityMismatch, "not a permutation");
    inv[sigma[i]] = i;
  }
  std::vector<std::uint8_t> e1(n * n), e2(n * n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      e1[inv[v] * n + inv[w]] = g.e1(v, w);
      e2[inv[v] * n + inv[w]] = g.e2(v, w);
    }
  }
  return Bigraph::from_adjacency(g.vertices(), std::move(e1), std::move(e2));
}

SiteModel SiteModel::validate(std::vector<std::string> vertices, std::vector<std::string> sites,
                              std::vector<std::vector<std::size_t>> s1, std::vector<std::vector<std::size_t>> s2) {
  const std::size_t n = vertices.size();
  if (s1.size() != n || s2.size() != n) throw Error(ErrorCode::ArityMismatch, "one S1/S2 entry per vertex required");
  SiteModel m;
  m.s3.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<int> role(sites.size(), 3);
    for (auto* part : {&s1[v], &s2[v]}) {
      std::sort(part->begin(), part->end());
      part->erase(std::unique(part->begin(), part->end()), part->end());
    }
    for (std::size_t s : s1[v]) {
      if (s >= sites.size()) throw Error(ErrorCode::UnknownVertex, "site index out of range");
      role[s] = 1;
    }
    for (std::size_t s : s2[v]) {
      if (s >= sites.size()) throw Error(ErrorCode::UnknownVertex, "site index out of range");
      if (role[s] == 1) throw Error(ErrorCode::ParseError, "site '" + sites[s] + "' is in both S1 and S2 of " + vertices[v]);
      role[s] = 2;
    }
    if (s1[v].empty()) throw Error(ErrorCode::EmptyS1, "vertex '" + vertices[v] + "' has no active site");
    for (std::size_t s = 0; s < sites.size(); ++s) {
      if (role[s] == 3) m.s3[v].push_back(s);
    }
  }
  m.vertices = std::move(vertices);
  m.sites = std::move(sites);
  m.s1 = std::move(s1);
  m.s2 = std::move(s2);
  return m;
}

int SiteModel::role(Vertex v, std::size_t s) const {
  if (std::binary_search(s1[v].begin(), s1[v].end(), s)) return 1;
  if (std::binary_search(s2[v].begin(), s2[v].end(), s)) return 2;
  return 3;
}

namespace {
bool intersects(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t x : a) {
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  }
  return false;
}
}  // namespace

Bigraph bigraph_of_sites(const SiteModel& m) {
  const std::size_t n = m.vertex_count();
  std::vector<std::uint8_t> e1(n * n), e2(n * n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      e1[v * n + w] = !intersects(m.s1[v], m.s2[w]);
      e2[v * n + w] = !intersects(m.s1[v], m.s1[w]);
    }
  }
  return Bigraph::from_adjacency(m.vertices, std::move(e1), std::move(e2));
}

SiteModel realize_sites(const Bigraph& g) {
  const std::size_t n = g.size();
  std::vector<std::string> sites;
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) sites.push_back("(" + g.name(v) + "," + g.name(w) + ")");
  }
  auto site = [n](Vertex v, Vertex w) { return v * n + w; };
  std::vector<std::vector<std::size_t>> s1(n), s2(n);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w = 0; w < n; ++w) {
      // S1_v = {(v,w),(w,v) : (v,w) not in E2}; includes (v,v) since E2 is irreflexive.
      if (!g.e2(v, w)) {
        s1[v].push_back(site(v, w));
        s1[v].push_back(site(w, v));
      }
      // S2_v = {(w,w) : (w,v) not in E1}.
      if (!g.e1(w, v)) s2[v].push_back(site(w, w));
    }
  }
  return SiteModel::validate(g.vertices(), std::move(sites), std::move(s1), std::move(s2));
}

}  // namespace bgi

#include "bgi/compat.hpp"

#include <algorithm>
#include <map>

namespace bgi {

const char* compat_class_name(CompatClass cls) {
  switch (cls) {
    case CompatClass::Full: return "full";
    case CompatClass::Zero: return "zero";
    case CompatClass::Tilde: return "tilde";
  }
  return "unknown";
}

void check_coloring(const Coloring& c, const Bigraph& g) {
  for (Vertex v : c) {
    if (v >= g.size()) throw Error(ErrorCode::UnknownVertex, "coloring uses a vertex outside the bigraph");
  }
}

bool is_monochromatic(const SetPartition& p, const Coloring& c) {
  if (p.size() != c.size()) throw Error(ErrorCode::ArityMismatch, "coloring and partition sizes differ");
  for (const auto& B : p.blocks()) {
    for (std::size_t i : B) {
      if (c[i] != c[B.front()]) return false;
    }
  }
  return true;
}

namespace {

bool crossing_allowed(const Bigraph& g, Vertex a, Vertex b, CompatClass cls) {
  return g.e2(a, b) || (cls == CompatClass::Tilde && a == b);
}

bool has_unobstructed_pair(const SetPartition& p, const Coloring& c, const Bigraph& g) {
  for (std::size_t a = 0; a < p.block_count(); ++a) {
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      if (a != b && unobstructed_nesting(p, c, g, a, b)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_compatible(const SetPartition& p, const Coloring& c, const Bigraph& g, CompatClass cls) {
  check_coloring(c, g);
  if (!is_monochromatic(p, c)) return false;
  for (const auto& B : p.blocks()) {
    const Vertex v = c[B.front()];
    // Anything strictly inside the hull of a block must be E1-reachable from it.
    for (std::size_t j = B.front() + 1; j < B.back(); ++j) {
      if (!g.e1(v, c[j])) return false;
    }
  }
  for (std::size_t a = 0; a < p.block_count(); ++a) {
    for (std::size_t b = a + 1; b < p.block_count(); ++b) {
      if (blocks_cross(p.block(a), p.block(b)) &&
          !crossing_allowed(g, c[p.block(a).front()], c[p.block(b).front()], cls)) {
        return false;
      }
    }
  }
  if (cls == CompatClass::Zero) return !has_unobstructed_pair(p, c, g);
  return true;
}

void for_each_compatible(const Coloring& c, const Bigraph& g, CompatClass cls,
                         const std::function<void(const SetPartition&)>& visit) {
  check_coloring(c, g);
  if (c.size() > kMaxEnumeration) throw Error(ErrorCode::SizeGuard, "compatible enumeration limited to k <= 12");
  const SetPartition ker = kernel(c);
  // Same-color blocks never cross except in the tilde class.
  std::map<std::size_t, std::vector<SetPartition>> per_size;
  for (const auto& C : ker.blocks()) {
    if (!per_size.count(C.size())) {
      per_size[C.size()] = cls == CompatClass::Tilde ? enumerate_all(C.size()) : enumerate_noncrossing(C.size());
    }
  }
  std::vector<SetPartition> parts(ker.block_count());
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == ker.block_count()) {
      SetPartition p = lift(ker, parts);
      if (is_compatible(p, c, g, cls)) visit(p);
      return;
    }
    for (const auto& q : per_size[ker.block(b).size()]) {
      parts[b] = q;
      rec(b + 1);
    }
  };
  rec(0);
}

std::vector<SetPartition> enumerate_compatible(const Coloring& c, const Bigraph& g, CompatClass cls) {
  std::vector<SetPartition> out;
  for_each_compatible(c, g, cls, [&](const SetPartition& p) { out.push_back(p); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SetPartition> enumerate_irreducible(const Coloring& c, const Bigraph& g) {
  std::vector<SetPartition> out;
  for_each_compatible(c, g, CompatClass::Full, [&](const SetPartition& p) {
    if (is_irreducible(p)) out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool nested(const SetPartition& p, std::size_t b1, std::size_t b2) {
  return b1 != b2 && block_nested_in(p.block(b2), p.block(b1));
}

bool unobstructed_nesting(const SetPartition& p, const Coloring& c, const Bigraph& g, std::size_t b1, std::size_t b2) {
  const Vertex v = c[p.block(b1).front()];
  if (v != c[p.block(b2).front()] || !nested(p, b1, b2)) return false;
  for (std::size_t w = 0; w < p.block_count(); ++w) {
    if (w == b1 || w == b2 || !nested(p, b1, w) || !nested(p, w, b2)) continue;
    const Vertex u = c[p.block(w).front()];
    if (u != v && !g.e2(v, u)) return false;
  }
  return true;
}

SetPartition envelope_zero(const SetPartition& p, const Coloring& c, const Bigraph& g) {
  if (!is_compatible(p, c, g, CompatClass::Full)) throw Error(ErrorCode::NotCompatible, "envelope needs p in P(c,G)");
  const std::size_t nb = p.block_count();
  std::vector<int> root(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<std::size_t> cands;
    for (std::size_t a = 0; a < nb; ++a) {
      if (a != b && unobstructed_nesting(p, c, g, a, b)) cands.push_back(a);
    }
    root[b] = static_cast<int>(b);
    // The minimal candidate is the one not nested in any other candidate.
    int found = 0;
    for (std::size_t a : cands) {
      bool minimal = true;
      for (std::size_t o : cands) minimal = minimal && !nested(p, o, a);
      if (minimal) {
        root[b] = static_cast<int>(a);
        ++found;
      }
    }
    if (found > 1) throw Error(ErrorCode::NotCompatible, "unobstructed encloser is not unique");
  }
  std::vector<int> raw(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) raw[i] = root[p.block_of(i)];
  return SetPartition::from_labels(raw);
}

SetPartition recompose(const Decomposition& d) { return lift(d.outer, d.parts); }

namespace {
Decomposition split_along(const SetPartition& p, const SetPartition& outer) {
  Decomposition d{outer, {}};
  for (const auto& B : outer.blocks()) d.parts.push_back(restrict_to(p, B));
  return d;
}
}  // namespace

Decomposition decompose_zero(const SetPartition& p, const Coloring& c, const Bigraph& g) {
  return split_along(p, envelope_zero(p, c, g));
}

Decomposition decompose_tilde(const SetPartition& p, const Coloring& c, const Bigraph& g) {
  if (!is_compatible(p, c, g, CompatClass::Tilde)) throw Error(ErrorCode::NotCompatible, "p is not in P~(c,G)");
  return split_along(p, colorwise_nc_envelope(p, c));
}

Coloring outer_coloring(const Coloring& c, const Composition& comp) {
  Coloring out;
  for (Vertex v : c) {
    if (v >= comp.outer_of.size()) throw Error(ErrorCode::UnknownVertex, "coloring outside composed bigraph");
    out.push_back(comp.outer_of[v]);
  }
  return out;
}

Decomposition decompose_operad(const SetPartition& p, const Coloring& c, const Composition& comp,
                               const Bigraph& outer, const std::vector<Bigraph>& inner) {
  if (inner.size() != outer.size() || comp.offset.size() != outer.size()) {
    throw Error(ErrorCode::NotComposition, "composition does not match the outer bigraph");
  }
  if (!is_compatible(p, c, comp.composed, CompatClass::Full)) throw Error(ErrorCode::NotCompatible, "p is not in P(c,G)");
  const Coloring ct = outer_coloring(c, comp);
  const SetPartition sigma = envelope_zero(colorwise_nc_envelope(p, ct), ct, outer);
  return split_along(p, sigma);
}

Bigraph bigraph_of_partition(const SetPartition& p) {
  const std::size_t n = p.block_count();
  std::vector<std::string> names;
  for (std::size_t b = 0; b < n; ++b) names.push_back(std::to_string(b + 1));
  std::vector<std::uint8_t> e1(n * n, 0), e2(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    e1[a * n + a] = 1;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (std::size_t j : p.block(b)) {
        if (j > p.block(a).front() && j < p.block(a).back()) e1[a * n + b] = 1;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) e2[a * n + b] = a != b && e1[a * n + b] && e1[b * n + a];
  }
  return Bigraph::from_adjacency(std::move(names), std::move(e1), std::move(e2));
}

bool is_morphism(const SetPartition& p, const Coloring& c, const Bigraph& g) {
  check_coloring(c, g);
  if (!is_monochromatic(p, c)) return false;
  const Bigraph h = bigraph_of_partition(p);
  for (std::size_t a = 0; a < h.size(); ++a) {
    for (std::size_t b = 0; b < h.size(); ++b) {
      const Vertex va = c[p.block(a).front()], vb = c[p.block(b).front()];
      if (h.e1(a, b) && !g.e1(va, vb)) return false;
      if (h.e2(a, b) && !g.e2(va, vb)) return false;
    }
  }
  return true;
}

// ---- unfinished partitions ----

std::vector<int> path_heights(const std::vector<Step>& steps) {
  std::vector<int> h;
  int cur = 0;
  for (const Step& s : steps) {
    cur += s.delta - s.epsilon;
    h.push_back(cur);
  }
  return h;
}

UnfinishedPartition path_to_unfinished(const std::vector<Step>& steps) {
  std::vector<int> labels(steps.size());
  std::vector<int> stack;  // unfinished blocks, most recently created on top
  std::vector<bool> open;
  int next = 0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const Step s = steps[j];
    if ((s.delta != 0 && s.delta != 1) || (s.epsilon != 0 && s.epsilon != 1)) {
      throw Error(ErrorCode::InvalidPath, "steps must be 0/1 pairs");
    }
    if (s.epsilon == 1 && stack.empty()) {
      if (s.delta == 0) throw Error(ErrorCode::NegativeHeight, "height drops below zero at step " + std::to_string(j + 1));
      throw Error(ErrorCode::ZeroPlateauViolation, "step (1,1) at height zero, index " + std::to_string(j + 1));
    }
    if (s.epsilon == 0) {
      labels[j] = next++;
      open.push_back(s.delta == 1);
      if (s.delta == 1) stack.push_back(labels[j]);
    } else {
      labels[j] = stack.back();
      if (s.delta == 0) {
        open[stack.back()] = false;
        stack.pop_back();
      }
    }
  }
  UnfinishedPartition u{SetPartition::from_labels(labels), {}};
  // Labels were assigned in order of first appearance, so they coincide with
  // the canonical block numbering.
  u.unfinished = open;
  return u;
}

std::vector<Step> unfinished_to_path(const UnfinishedPartition& u) {
  const SetPartition& p = u.partition;
  std::vector<Step> steps(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const std::size_t b = static_cast<std::size_t>(p.block_of(j));
    const auto& B = p.block(b);
    const bool open = u.unfinished[b];
    if (j == B.front()) {
      steps[j] = (B.size() == 1 && !open) ? Step{0, 0} : Step{1, 0};
    } else if (j == B.back() && !open) {
      steps[j] = Step{0, 1};
    } else {
      steps[j] = Step{1, 1};
    }
  }
  return steps;
}

namespace {
std::vector<Step> sub_steps(const std::vector<Step>& steps, const std::vector<std::size_t>& idx) {
  std::vector<Step> out;
  for (std::size_t i : idx) out.push_back(steps[i]);
  return out;
}
}  // namespace

UnfinishedPartition colored_path_to_unfinished(const std::vector<Step>& steps, const Coloring& c) {
  if (steps.size() != c.size()) throw Error(ErrorCode::ArityMismatch, "one step per index required");
  const SetPartition ker = kernel(c);
  std::vector<int> raw(c.size());
  std::vector<bool> flags;
  int offset = 0;
  for (const auto& C : ker.blocks()) {
    const UnfinishedPartition part = path_to_unfinished(sub_steps(steps, C));
    for (std::size_t j = 0; j < C.size(); ++j) raw[C[j]] = offset + part.partition.block_of(j);
    for (bool f : part.unfinished) flags.push_back(f);
    offset += static_cast<int>(part.partition.block_count());
  }
  // Re-derive flags against the canonical numbering of the merged partition.
  UnfinishedPartition u{SetPartition::from_labels(raw), {}};
  u.unfinished.resize(u.partition.block_count());
  for (std::size_t b = 0; b < u.partition.block_count(); ++b) {
    u.unfinished[b] = flags[raw[u.partition.block(b).front()]];
  }
  return u;
}

bool is_valid_colored_path(const std::vector<Step>& steps, const Coloring& c) {
  try {
    colored_path_to_unfinished(steps, c);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool is_unfinished_noncrossing(const UnfinishedPartition& u) {
  const SetPartition& p = u.partition;
  std::vector<std::size_t> open;
  for (std::size_t b = 0; b < p.block_count(); ++b) {
    if (u.unfinished[b]) open.push_back(b);
  }
  // Later-created unfinished blocks close first (they are the inner ones).
  std::sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) { return p.block(a).front() > p.block(b).front(); });
  std::vector<int> raw(p.labels().begin(), p.labels().end());
  for (std::size_t b : open) raw.push_back(static_cast<int>(b));
  return is_noncrossing(SetPartition::from_labels(raw));
}

bool is_unfinished_compatible(const UnfinishedPartition& u, const Coloring& c, const Bigraph& g, bool zero) {
  const SetPartition& p = u.partition;
  check_coloring(c, g);
  if (u.unfinished.size() != p.block_count()) throw Error(ErrorCode::ArityMismatch, "one flag per block required");
  if (!is_monochromatic(p, c)) return false;
  const std::size_t nb = p.block_count();
  // Hull of a block: [min, max], or [min, infinity) when unfinished.
  auto meets_hull = [&](std::size_t of, std::size_t other) {
    const auto& H = p.block(of);
    for (std::size_t x : p.block(other)) {
      if (x > H.front() && (u.unfinished[of] || x < H.back())) return true;
    }
    return false;
  };
  std::vector<std::uint8_t> e1(nb * nb, 0);
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) e1[a * nb + b] = a != b && meets_hull(a, b);
  }
  auto color = [&](std::size_t b) { return c[p.block(b).front()]; };
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (!e1[a * nb + b]) continue;
      if (!g.e1(color(a), color(b))) return false;
      if (e1[b * nb + a] && !g.e2(color(a), color(b))) return false;
    }
  }
  if (!zero) return true;
  auto nested_in = [&](std::size_t outer, std::size_t inner) { return e1[outer * nb + inner] && !e1[inner * nb + outer]; };
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (a == b || color(a) != color(b) || !nested_in(a, b)) continue;
      bool obstructed = false;
      for (std::size_t w = 0; w < nb && !obstructed; ++w) {
        if (w == a || w == b || !nested_in(a, w) || !nested_in(w, b)) continue;
        obstructed = color(w) != color(a) && !g.e2(color(a), color(w));
      }
      if (!obstructed) return false;  // adjacent pair
    }
  }
  return true;
}

}  // namespace bgi

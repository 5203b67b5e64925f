#include "bgi/io.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bgi {

namespace {
std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}
}  // namespace

Json read_json_file(const std::string& path) {
  const std::string text = read_text(path);
  return guarded("reading " + path, [&] { return Json::parse(text); });
}

Json bigraph_to_json(const Bigraph& g) {
  Json j;
  j["vertices"] = g.vertices();
  j["edges1"] = Json::array();
  for (const auto& [v, w] : g.edges1()) j["edges1"].push_back({v, w});
  j["edges2"] = Json::array();
  for (const auto& [v, w] : g.edges2()) j["edges2"].push_back({v, w});
  return j;
}

Bigraph bigraph_from_json(const Json& j) {
  return guarded("bigraph", [&] {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<Edge> e1, e2;
    for (const auto& e : j.at("edges1")) e1.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    if (j.contains("edges2")) {
      for (const auto& e : j.at("edges2")) e2.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    return Bigraph::validate(std::move(vertices), e1, e2);
  });
}

Json site_model_to_json(const SiteModel& m) {
  Json j;
  j["sites"] = m.sites;
  for (const char* key : {"s1", "s2", "s3"}) j[key] = Json::object();
  for (Vertex v = 0; v < m.vertex_count(); ++v) {
    auto names = [&](const std::vector<std::size_t>& idx) {
      std::vector<std::string> out;
      for (std::size_t s : idx) out.push_back(m.sites[s]);
      return out;
    };
    j["s1"][m.vertices[v]] = names(m.s1[v]);
    j["s2"][m.vertices[v]] = names(m.s2[v]);
    j["s3"][m.vertices[v]] = names(m.s3[v]);
  }
  j["vertices"] = m.vertices;
  return j;
}

SiteModel site_model_from_json(const Json& j) {
  return guarded("site model", [&] {
    const auto sites = j.at("sites").get<std::vector<std::string>>();
    auto site_index = [&](const std::string& s) {
      for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i] == s) return i;
      }
      throw Error(ErrorCode::UnknownVertex, "site '" + s + "' not declared");
    };
    // Vertex order: explicit list if present, else the order of the s1 object.
    std::vector<std::string> vertices;
    if (j.contains("vertices")) {
      vertices = j.at("vertices").get<std::vector<std::string>>();
    } else {
      for (const auto& item : j.at("s1").items()) vertices.push_back(item.key());
    }
    std::vector<std::vector<std::size_t>> s1(vertices.size()), s2(vertices.size());
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      for (const auto& s : j.at("s1").at(vertices[v])) s1[v].push_back(site_index(s.get<std::string>()));
      if (j.contains("s2") && j.at("s2").contains(vertices[v])) {
        for (const auto& s : j.at("s2").at(vertices[v])) s2[v].push_back(site_index(s.get<std::string>()));
      }
    }
    SiteModel m = SiteModel::validate(vertices, sites, s1, s2);
    if (j.contains("s3")) {
      for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (!j.at("s3").contains(vertices[v])) continue;
        std::vector<std::size_t> given;
        for (const auto& s : j.at("s3").at(vertices[v])) given.push_back(site_index(s.get<std::string>()));
        std::sort(given.begin(), given.end());
        if (given != m.s3[v]) throw Error(ErrorCode::ParseError, "s3 of '" + vertices[v] + "' is not the complement of s1 and s2");
      }
    }
    return m;
  });
}

Complex complex_from_json(const Json& j) {
  return guarded("complex number", [&] {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
  });
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Matrix matrix_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim * dim) {
    throw Error(ErrorCode::DimMismatch, "matrix needs " + std::to_string(dim * dim) + " row-major entries");
  }
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) m(i, k) = complex_from_json(j[i * dim + k]);
  }
  return m;
}

Coloring coloring_from_names(const Bigraph& g, const std::vector<std::string>& names) {
  Coloring c;
  for (const auto& n : names) c.push_back(g.index_of(n));
  return c;
}

Coloring coloring_from_names(const SiteModel& m, const std::vector<std::string>& names) {
  Coloring c;
  for (const auto& n : names) {
    auto it = std::find(m.vertices.begin(), m.vertices.end(), n);
    if (it == m.vertices.end()) throw Error(ErrorCode::UnknownVertex, "vertex '" + n + "' not in the site model");
    c.push_back(static_cast<Vertex>(it - m.vertices.begin()));
  }
  return c;
}

MomentProblem moment_problem_from_json(const Json& j, const std::string& base_dir) {
  return guarded("moment problem", [&] {
    MomentProblem p;
    const Json& gj = j.at("bigraph");
    if (gj.is_string()) {
      std::filesystem::path path = gj.get<std::string>();
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      p.graph = bigraph_from_json(read_json_file(path.string()));
    } else {
      p.graph = bigraph_from_json(gj);
    }
    p.word = coloring_from_names(p.graph, j.at("word").get<std::vector<std::string>>());
    for (Vertex v = 0; v < p.graph.size(); ++v) {
      const std::string& name = p.graph.name(v);
      if (!j.at("algebras").contains(name)) {
        p.states.push_back(AlgebraState::trace_state(1));
        continue;
      }
      const Json& a = j.at("algebras").at(name);
      const std::size_t dim = a.at("dim").get<std::size_t>();
      const Json state = a.value("state", Json{{"type", "vector"}});
      const std::string type = state.value("type", "vector");
      if (type == "trace") {
        p.states.push_back(AlgebraState::trace_state(dim));
      } else if (type == "vector") {
        Vector xi = Vector::Zero(static_cast<Eigen::Index>(dim));
        if (state.contains("components")) {
          const Json& comp = state.at("components");
          if (comp.size() != dim) throw Error(ErrorCode::DimMismatch, "state vector of '" + name + "' has wrong length");
          for (std::size_t i = 0; i < dim; ++i) xi(static_cast<Eigen::Index>(i)) = complex_from_json(comp[i]);
        } else {
          xi(0) = 1;
        }
        p.states.push_back(AlgebraState::vector_state(xi));
      } else {
        throw Error(ErrorCode::ParseError, "unknown state type '" + type + "'");
      }
    }
    const Json& el = j.at("elements");
    if (el.size() != p.word.size()) throw Error(ErrorCode::ArityMismatch, "one element per word letter required");
    for (std::size_t i = 0; i < p.word.size(); ++i) p.elements.push_back(matrix_from_json(el[i], p.states[p.word[i]].dim));
    p.validate();
    return p;
  });
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string file_hash(const std::string& path) { return content_hash(read_text(path)); }

Json manifest_to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["inputs"] = m.inputs;
  j["seed"] = m.seed;
  j["version"] = m.version;
  j["timings_ms"] = m.timings_ms;
  return j;
}

RunManifest manifest_from_json(const Json& j) {
  return guarded("manifest", [&] {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
    return m;
  });
}

}  // namespace bgi

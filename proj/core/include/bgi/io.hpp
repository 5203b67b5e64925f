#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgi/bigraph.hpp"
#include "bgi/ncps.hpp"

namespace bgi {

using Json = nlohmann::json;

Json read_json_file(const std::string& path);

// {"vertices":[...],"edges1":[["v","w"],...],"edges2":[...]}; edges2 is
// written in both orientations and read in either.
Json bigraph_to_json(const Bigraph& g);
Bigraph bigraph_from_json(const Json& j);

// {"sites":[...],"s1":{"v":[...]},"s2":{...},"s3":{...}} with s3 optional.
Json site_model_to_json(const SiteModel& m);
SiteModel site_model_from_json(const Json& j);

Complex complex_from_json(const Json& j);  // [re, im]
Json complex_to_json(Complex z);
Matrix matrix_from_json(const Json& j, std::size_t dim);  // row-major [[re,im],...]

// {"bigraph": inline object or path, "word":[...], "algebras":{"v":{"dim":d,
// "state":{"type":"vector","components":[...]}|{"type":"trace"}}},
// "elements":[...]}; relative bigraph paths resolve against base_dir.
MomentProblem moment_problem_from_json(const Json& j, const std::string& base_dir = ".");
Coloring coloring_from_names(const Bigraph& g, const std::vector<std::string>& names);
Coloring coloring_from_names(const SiteModel& m, const std::vector<std::string>& names);

// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string content_hash(const std::string& bytes);
std::string file_hash(const std::string& path);

// Record of one CLI run: enough to repeat it and check its inputs.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> inputs;  // path -> content hash
  std::uint64_t seed = 0;
  std::string version;
  std::map<std::string, double> timings_ms;
};
Json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

}  // namespace bgi

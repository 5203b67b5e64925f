// bgi: command line front end for the bigraph independence library.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bgi/bgi.hpp"
#include "bgi/io.hpp"

namespace {

using namespace bgi;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitError = 2;

// Options shared by every subcommand.
struct Globals {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string out;
  std::string manifest;
};

// Collects output and the files read, so that a manifest can be written.
struct Run {
  Globals globals;
  std::vector<std::string> argv;
  std::string command;
  std::map<std::string, std::string> inputs;
  std::ostringstream out;

  Json read_input(const std::string& path) {
    inputs[path] = file_hash(path);
    return read_json_file(path);
  }
};

std::string csv_number(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Without a bigraph file, the distinct colors are taken as pairwise free.
Bigraph default_bigraph(const std::vector<std::string>& names) {
  std::vector<std::string> vertices;
  for (const auto& n : names) {
    if (std::find(vertices.begin(), vertices.end(), n) == vertices.end()) vertices.push_back(n);
  }
  std::map<std::pair<std::string, std::string>, PairKind> kinds;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) kinds[{vertices[i], vertices[j]}] = PairKind::Free;
  }
  return from_pairwise(vertices, kinds);
}

CompatClass parse_class(const std::string& name) {
  if (name == "full") return CompatClass::Full;
  if (name == "zero") return CompatClass::Zero;
  if (name == "tilde") return CompatClass::Tilde;
  throw Error(ErrorCode::ParseError, "unknown partition class '" + name + "' (full, zero, tilde)");
}

std::optional<CumulantKind> parse_basis(const std::string& name) {
  if (name == "free") return CumulantKind::Free;
  if (name == "boolean") return CumulantKind::Boolean;
  if (name == "classical") return CumulantKind::Classical;
  if (name == "all") return std::nullopt;
  throw Error(ErrorCode::ParseError, "unknown basis '" + name + "' (free, boolean, classical, all)");
}

std::string base_dir_of(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  return parent.empty() ? "." : parent.string();
}

MomentProblem load_problem(Run& run, const std::string& path) {
  const Json j = run.read_input(path);
  if (j.contains("bigraph") && j.at("bigraph").is_string()) {
    const fs::path graph_path = fs::path(base_dir_of(path)) / j.at("bigraph").get<std::string>();
    run.inputs[graph_path.string()] = file_hash(graph_path.string());
  }
  return moment_problem_from_json(j, base_dir_of(path));
}

// ---- Subcommands. Each returns an exit code and writes to run.out.

int cmd_partitions(Run& run, const std::string& coloring, const std::string& bigraph_path, const std::string& cls) {
  const auto names = split_names(coloring);
  const Bigraph g = bigraph_path.empty() ? default_bigraph(names) : bigraph_from_json(run.read_input(bigraph_path));
  const Coloring c = coloring_from_names(g, names);
  std::size_t count = 0;
  for_each_compatible(c, g, parse_class(cls), [&](const SetPartition& p) {
    run.out << to_string(p) << "\n";
    ++count;
  });
  run.out << "count: " << count << "\n";
  return kExitOk;
}

int cmd_moment(Run& run, const std::string& problem_path, const std::string& basis) {
  const MomentProblem p = load_problem(run, problem_path);
  const auto report = joint_moment_all(p.graph, p.word, problem_functional(p));
  const auto kind = parse_basis(basis);
  Complex value = report.free;
  std::size_t count = report.n_free;
  if (kind == CumulantKind::Boolean) {
    value = report.boolean;
    count = report.n_boolean;
  } else if (kind == CumulantKind::Classical) {
    value = report.classical;
    count = report.n_classical;
  }
  const bool agree = report.max_discrepancy() <= run.globals.tolerance;
  Json j;
  j["value"] = complex_to_json(value);
  j["basis"] = basis;
  j["npartitions"] = count;
  j["values"] = {{"free", complex_to_json(report.free)},
                 {"boolean", complex_to_json(report.boolean)},
                 {"classical", complex_to_json(report.classical)}};
  j["npartitions_by_basis"] = {{"free", report.n_free}, {"boolean", report.n_boolean}, {"classical", report.n_classical}};
  j["max_discrepancy"] = report.max_discrepancy();
  j["agree"] = agree;
  run.out << j.dump(2) << "\n";
  return agree ? kExitOk : kExitCheckFailed;
}

int cmd_verify(Run& run, const std::string& problem_path) {
  const MomentProblem p = load_problem(run, problem_path);
  const auto report = joint_moment_all(p.graph, p.word, problem_functional(p));
  const auto space = ProductSpace::build(p.graph, p.states, p.word.size());
  const Complex hilbert = vacuum_moment(space, p.word, p.elements);
  const double gap = std::max({report.max_discrepancy(), discrepancy(hilbert, report.free),
                               discrepancy(hilbert, report.boolean), discrepancy(hilbert, report.classical)});
  const bool pass = gap <= run.globals.tolerance;
  std::ostringstream tol;
  tol << run.globals.tolerance;
  std::string tol_text = tol.str();
  if (const auto at = tol_text.find("e-0"); at != std::string::npos) tol_text.erase(at + 2, 1);
  run.out << (pass ? "PASS maxgap<" : "FAIL maxgap=") << (pass ? tol_text : csv_number(gap)) << "\n";
  run.out << "free " << report.free << " boolean " << report.boolean << " classical " << report.classical << " hilbert "
          << hilbert << "\n";
  return pass ? kExitOk : kExitCheckFailed;
}

// Word file: {"word":[names], "patterns":[{"dim":r,"entries":[row-major]}]};
// pattern j (cycled) is replicated to the active dimension of letter j.
struct MatrixInput {
  SiteModel model;
  Coloring word;
  ElementGenerator generator;
};

MatrixInput load_matrix_input(Run& run, const std::string& model_path, const std::string& word_path) {
  MatrixInput in;
  in.model = site_model_from_json(run.read_input(model_path));
  const Json w = run.read_input(word_path);
  try {
    in.word = coloring_from_names(in.model, w.at("word").get<std::vector<std::string>>());
    std::vector<Matrix> patterns;
    for (const auto& p : w.at("patterns")) patterns.push_back(matrix_from_json(p.at("entries"), p.at("dim").get<std::size_t>()));
    if (patterns.empty()) throw Error(ErrorCode::ParseError, "at least one pattern is required");
    in.generator = replicated_generator(std::move(patterns));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, word_path + ": " + e.what());
  }
  return in;
}

int cmd_matrix_simulate(Run& run, const std::string& model_path, const std::string& word_path,
                        const std::vector<std::size_t>& ns, std::size_t samples, bool exact) {
  const MatrixInput in = load_matrix_input(run, model_path, word_path);
  run.out << "N,samples,mean_re,mean_im,stderr,exact_re,exact_im,limit_re,limit_im\n";
  bool consistent = true;
  for (std::size_t n : ns) {
    const auto elements = generate_elements(in.model, n, in.word, in.generator);
    const auto mc = monte_carlo(in.model, n, in.word, elements, samples, run.globals.seed);
    const Complex ex = exact ? exact_expectation(in.model, n, in.word, elements) : Complex(std::nan(""), std::nan(""));
    const Complex lim = limit_moment(in.model, in.word, elements);
    if (exact && std::abs(mc.mean - ex) > 5.0 * mc.stderr_ + run.globals.tolerance) consistent = false;
    run.out << n << "," << samples << "," << csv_number(mc.mean.real()) << "," << csv_number(mc.mean.imag()) << ","
            << csv_number(mc.stderr_) << "," << csv_number(ex.real()) << "," << csv_number(ex.imag()) << ","
            << csv_number(lim.real()) << "," << csv_number(lim.imag()) << "\n";
  }
  if (!consistent) std::cerr << "Monte Carlo mean is more than 5 standard errors from the exact expectation\n";
  return consistent ? kExitOk : kExitCheckFailed;
}

int cmd_matrix_study(Run& run, const std::string& model_path, const std::string& word_path,
                     const std::vector<std::size_t>& ns) {
  const MatrixInput in = load_matrix_input(run, model_path, word_path);
  const auto study = convergence_study(in.model, in.word, in.generator, ns);
  run.out << "N,exact_re,exact_im,limit_re,limit_im,gap\n";
  for (const auto& row : study.rows) {
    run.out << row.n << "," << csv_number(row.exact.real()) << "," << csv_number(row.exact.imag()) << ","
            << csv_number(row.limit.real()) << "," << csv_number(row.limit.imag()) << "," << csv_number(row.gap) << "\n";
  }
  if (study.vanishing_gap) {
    std::cerr << "gap vanishes at every N\n";
  } else {
    std::cerr << "log-log slope of the gap: " << study.slope << "\n";
  }
  return kExitOk;
}

int cmd_weingarten(Run& run, std::size_t k, const std::string& dim, const std::string& cycle_type) {
  const mpz_class n(dim);
  const WeingartenTable table(k, n);
  if (!cycle_type.empty()) {
    const CycleType t = parse_cycle_type(cycle_type);
    run.out << to_string(table.value_of_type(t)) << "\n";
    return kExitOk;
  }
  run.out << "cycle_type,value\n";
  for (const CycleType& t : integer_partitions(k)) {
    std::string label;
    for (std::size_t part : t) label += (label.empty() ? "" : " ") + std::to_string(part);
    run.out << label << "," << to_string(table.value_of_type(t)) << "\n";
  }
  return kExitOk;
}

int cmd_bigraph_classify(Run& run, const std::string& path) {
  const Bigraph g = bigraph_from_json(run.read_input(path));
  for (Vertex v = 0; v < g.size(); ++v) {
    for (Vertex w = v + 1; w < g.size(); ++w) {
      run.out << g.name(v) << " " << g.name(w) << " " << pair_kind_name(classify_pair(g, v, w)) << "\n";
    }
  }
  run.out << "normalized: " << (is_normalized(g) ? "yes" : "no") << "\n";
  run.out << "bmt regime: " << (is_bmt_regime(g) ? "yes" : "no") << "\n";
  run.out << "epsilon regime: " << (is_epsilon_regime(g) ? "yes" : "no") << "\n";
  return kExitOk;
}

int cmd_bigraph_compose(Run& run, const std::string& outer_path, const std::vector<std::string>& inner_paths) {
  const Bigraph outer = bigraph_from_json(run.read_input(outer_path));
  std::vector<Bigraph> inner;
  for (const auto& p : inner_paths) inner.push_back(bigraph_from_json(run.read_input(p)));
  run.out << bigraph_to_json(operad_compose(outer, inner).composed).dump(2) << "\n";
  return kExitOk;
}

int cmd_bigraph_realize(Run& run, const std::string& path) {
  const Bigraph g = bigraph_from_json(run.read_input(path));
  run.out << site_model_to_json(realize_sites(g)).dump(2) << "\n";
  return kExitOk;
}

int run_command(const std::vector<std::string>& args, bool write_manifest);

// Re-runs the recorded command into a side file and compares it with the
// recorded output byte for byte.
int cmd_replay(Run& run, const std::string& manifest_path) {
  const RunManifest m = manifest_from_json(run.read_input(manifest_path));
  bool inputs_ok = true;
  for (const auto& [path, hash] : m.inputs) {
    std::string now;
    try {
      now = file_hash(path);
    } catch (const Error&) {
      now = "missing";
    }
    if (now != hash) {
      run.out << "input changed: " << path << " (" << hash << " -> " << now << ")\n";
      inputs_ok = false;
    }
  }
  if (!inputs_ok) return kExitCheckFailed;

  std::vector<std::string> args = m.argv;
  std::string recorded;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--out") {
      recorded = args[i + 1];
      args[i + 1] = recorded + ".replay";
    }
  }
  if (recorded.empty()) throw Error(ErrorCode::ParseError, "manifest has no --out to compare against");
  const int code = run_command(args, false);
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const bool same = slurp(recorded) == slurp(recorded + ".replay");
  run.out << "replay of '" << m.command << "' exited " << code << "; output "
          << (same ? "identical to " : "differs from ") << recorded << "\n";
  return same ? kExitOk : kExitCheckFailed;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  f << text;
}

int run_command(const std::vector<std::string>& args, bool write_manifest) {
  Run run;
  run.argv = args;
  CLI::App app{"Bigraph independence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", run.globals.seed, "Seed for Monte Carlo sampling");
  app.add_option("--tolerance", run.globals.tolerance, "Relative tolerance of internal checks");
  app.add_option("--out", run.globals.out, "Write the result to this file instead of stdout");
  app.add_option("--manifest", run.globals.manifest, "Manifest path (default: <out>.manifest.json when --out is set)");
  app.set_version_flag("--version", BGI_VERSION);

  std::function<int()> action;

  std::string coloring, bigraph_path, cls = "full";
  auto* partitions = app.add_subcommand("partitions", "List the partitions of a colored word");
  partitions->add_option("--coloring", coloring, "Comma-separated vertex names")->required();
  partitions->add_option("--bigraph", bigraph_path, "Bigraph JSON (default: colors pairwise free)");
  partitions->add_option("--class", cls, "full, zero or tilde");
  partitions->callback([&] { action = [&] { return cmd_partitions(run, coloring, bigraph_path, cls); }; });

  std::string problem, basis = "free";
  auto* moment = app.add_subcommand("moment", "Joint moment of a moment problem");
  moment->add_option("--problem", problem, "Moment problem JSON")->required()->check(CLI::ExistingFile);
  moment->add_option("--basis", basis, "free, boolean, classical or all");
  moment->callback([&] { action = [&] { return cmd_moment(run, problem, basis); }; });

  auto* verify = app.add_subcommand("verify", "Check all bases and the Hilbert realization against each other");
  verify->add_option("--problem", problem, "Moment problem JSON")->required()->check(CLI::ExistingFile);
  verify->callback([&] { action = [&] { return cmd_verify(run, problem); }; });

  std::string model_path, word_path;
  std::vector<std::size_t> ns;
  std::size_t samples = 1000;
  bool no_exact = false;
  auto* matrix = app.add_subcommand("matrix", "Random matrix model");
  matrix->require_subcommand(1);
  auto* simulate = matrix->add_subcommand("simulate", "Monte Carlo, exact and limit moments as CSV");
  simulate->add_option("--model", model_path, "Site model JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--word", word_path, "Word and element patterns JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--n", ns, "Dimensions N (repeat or comma-separate)")->required()->delimiter(',');
  simulate->add_option("--samples", samples, "Monte Carlo samples per N");
  simulate->add_flag("--no-exact", no_exact, "Skip the exact Weingarten expectation");
  simulate->callback([&] { action = [&] { return cmd_matrix_simulate(run, model_path, word_path, ns, samples, !no_exact); }; });
  auto* study = matrix->add_subcommand("study", "Gap between exact and limit moments over N");
  study->add_option("--model", model_path, "Site model JSON")->required()->check(CLI::ExistingFile);
  study->add_option("--word", word_path, "Word and element patterns JSON")->required()->check(CLI::ExistingFile);
  study->add_option("--n", ns, "Dimensions N (repeat or comma-separate)")->required()->delimiter(',');
  study->callback([&] { action = [&] { return cmd_matrix_study(run, model_path, word_path, ns); }; });

  std::size_t order = 0;
  std::string dim, cycle_type;
  auto* weingarten = app.add_subcommand("weingarten", "Exact Weingarten values");
  weingarten->add_option("--k", order, "Order k")->required();
  weingarten->add_option("--n", dim, "Dimension N")->required();
  weingarten->add_option("--cycle-type", cycle_type, "Single cycle type, e.g. 2,1");
  weingarten->callback([&] { action = [&] { return cmd_weingarten(run, order, dim, cycle_type); }; });

  std::string outer_path;
  std::vector<std::string> inner_paths;
  auto* bigraph = app.add_subcommand("bigraph", "Bigraph utilities");
  bigraph->require_subcommand(1);
  auto* classify = bigraph->add_subcommand("classify", "Pair kinds and regimes");
  classify->add_option("--bigraph", bigraph_path, "Bigraph JSON")->required()->check(CLI::ExistingFile);
  classify->callback([&] { action = [&] { return cmd_bigraph_classify(run, bigraph_path); }; });
  auto* compose = bigraph->add_subcommand("compose", "Operad composition");
  compose->add_option("--outer", outer_path, "Outer bigraph JSON")->required()->check(CLI::ExistingFile);
  compose->add_option("--inner", inner_paths, "Inner bigraph JSON, one per outer vertex")->required()->check(CLI::ExistingFile);
  compose->callback([&] { action = [&] { return cmd_bigraph_compose(run, outer_path, inner_paths); }; });
  auto* realize = bigraph->add_subcommand("realize", "Canonical site model");
  realize->add_option("--bigraph", bigraph_path, "Bigraph JSON")->required()->check(CLI::ExistingFile);
  realize->callback([&] { action = [&] { return cmd_bigraph_realize(run, bigraph_path); }; });

  std::string manifest_in;
  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare outputs");
  replay->add_option("manifest", manifest_in, "Manifest JSON")->required()->check(CLI::ExistingFile);
  replay->callback([&] { action = [&] { return cmd_replay(run, manifest_in); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }
  for (auto* sub : app.get_subcommands()) {
    run.command = sub->get_name();
    for (auto* nested : sub->get_subcommands()) run.command += " " + nested->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitError;
  try {
    code = action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (run.globals.out.empty()) {
    std::cout << run.out.str();
  } else {
    write_text(run.globals.out, run.out.str());
  }
  std::string manifest_path = run.globals.manifest;
  if (manifest_path.empty() && !run.globals.out.empty()) manifest_path = run.globals.out + ".manifest.json";
  if (write_manifest && !manifest_path.empty()) {
    RunManifest m;
    m.command = run.command;
    m.argv = run.argv;
    m.inputs = run.inputs;
    m.seed = run.globals.seed;
    m.version = BGI_VERSION;
    m.timings_ms["total"] = ms;
    write_text(manifest_path, manifest_to_json(m).dump(2) + "\n");
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    return run_command(args, true);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "modgraph/analytic.hpp"
#include "modgraph/count_cache.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/errors.hpp"
#include "modgraph/experiments.hpp"
#include "modgraph/graph_io.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/sampler.hpp"
#include "modgraph/tree_series.hpp"

namespace {

using namespace modgraph;

constexpr int usage_error = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string class_spec = "builtin:empty";
  std::uint64_t seed = 1;
  std::size_t order = 0;
  std::string out;
  unsigned jobs = 1;
};

PrimeClass load_class_checked(const std::string& spec) {
  if (spec.rfind("builtin:", 0) != 0 && !std::filesystem::exists(spec))
    throw UsageError("class file not found: " + spec);
  return load_class(spec);
}

std::size_t parse_size_suffix(const std::string& spec, std::size_t prefix) {
  const std::string digits = spec.substr(prefix);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw UsageError("bad pattern: " + spec);
  return std::stoul(digits);
}

// "builtin:P<k>", "builtin:C<k>", "builtin:K<k>", "builtin:co-K<k>" or a graph file.
NamedPattern load_pattern(const std::string& spec) {
  const std::string tag = "builtin:";
  if (spec.rfind(tag, 0) == 0) {
    const std::string body = spec.substr(tag.size());
    if (body.rfind("co-K", 0) == 0)
      return {body, LabeledGraph::edgeless(parse_size_suffix(body, 4))};
    if (!body.empty() && body[0] == 'P') return {body, LabeledGraph::path(parse_size_suffix(body, 1))};
    if (!body.empty() && body[0] == 'C') return {body, LabeledGraph::cycle(parse_size_suffix(body, 1))};
    if (!body.empty() && body[0] == 'K')
      return {body, LabeledGraph::complete(parse_size_suffix(body, 1))};
    throw UsageError("unknown builtin pattern: " + spec);
  }
  if (!std::filesystem::exists(spec)) throw UsageError("pattern file not found: " + spec);
  return {std::filesystem::path(spec).stem().string(), read_graph_file(spec)};
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
}

std::size_t cache_order(const Globals& g, std::size_t needed) {
  if (g.order != 0 && g.order < needed)
    throw UsageError("--order " + std::to_string(g.order) + " is below the largest size " +
                     std::to_string(needed));
  return std::max(g.order, needed);
}

int cmd_decompose(const Globals& g, const std::string& path) {
  const LabeledGraph graph = read_graph_file(path);
  emit(g, tree_to_json(modular_decomposition(graph)) + "\n");
  return 0;
}

int cmd_counts(const Globals& g) {
  const PrimeClass cls = load_class_checked(g.class_spec);
  const std::size_t order = g.order == 0 ? 20 : g.order;
  std::vector<BigInt> counts(order + 1);
  if (cls.kind() == PrimeClassKind::Custom) {
    const SeriesBundle bundle = solve_tree_series(cls, order);
    for (std::size_t n = 1; n <= order; ++n) counts[n] = bundle.T.count(n);
  } else {
    const CountCache cache(cls, order);
    for (std::size_t n = 1; n <= order; ++n) counts[n] = cache.trees()[n];
  }
  std::optional<ClassConstants> constants;
  const ConditionReport condition = check_condition_c(cls);
  if (condition.holds)
    constants = solve_constants(cls);
  else
    std::cerr << "condition (C) fails: " << condition.reason << "; prediction columns omitted\n";
  std::ostringstream s;
  for (std::size_t n = 1; n <= order; ++n) {
    s << n << '\t' << to_string(counts[n]);
    if (constants)
      s << '\t' << format_double(predicted_count(n, *constants)) << '\t'
        << format_double(count_ratio(counts[n], n, *constants));
    s << '\n';
  }
  emit(g, s.str());
  return 0;
}

int cmd_constants(const Globals& g) {
  const PrimeClass cls = load_class_checked(g.class_spec);
  const ClassConstants c = solve_constants(cls);
  std::ostringstream s;
  s.precision(12);
  s << "kappa\t" << c.kappa << "\nR\t" << c.R << "\nK\t" << c.K << "\nmu\t" << c.mu << "\nC\t"
    << c.C << "\np\t" << c.p << '\n';
  emit(g, s.str());
  return 0;
}

struct SampleArgs {
  std::size_t size = 0;
  std::size_t count = 0;
  std::string out_dir;
  bool tree = false;
};

int cmd_sample(const Globals& g, const SampleArgs& a) {
  const PrimeClass cls = load_class_checked(g.class_spec);
  const CountCache cache(cls, cache_order(g, a.size));
  const std::size_t count = std::max<std::size_t>(1, a.count);
  const auto items = parallel_map<std::string>(count, g.jobs, [&](std::size_t i) {
    RngStream rng(g.seed, cell_stream(4, a.size, i));
    const SubstitutionTree t = sample_uniform_tree(cache, a.size, rng);
    return a.tree ? tree_to_json(t) + "\n" : format_graph(graph_of(t));
  });
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    for (std::size_t i = 0; i < count; ++i)
      write_text_file((std::filesystem::path(a.out_dir) /
                       ("sample_" + std::to_string(i + 1) + (a.tree ? ".json" : ".txt")))
                          .string(),
                      items[i]);
    return 0;
  }
  std::string text;
  for (std::size_t i = 0; i < count; ++i) text += (i ? "\n" : "") + items[i];
  emit(g, text);
  return 0;
}

struct OccArgs {
  std::string pattern = "builtin:P4";
  std::string host;
};

int cmd_occ(const Globals& g, const OccArgs& a) {
  const NamedPattern h = load_pattern(a.pattern);
  std::ostringstream s;
  if (!a.host.empty()) {
    const LabeledGraph host = read_graph_file(a.host);
    s << "pattern,copies,occ,occ_labeled\n"
      << h.name << ',' << to_string(induced_copies(h.graph, host)) << ','
      << to_string(occ_count(h.graph, host)) << ',' << to_string(occ_count_labeled(h.graph, host))
      << '\n';
    emit(g, s.str());
    return 0;
  }
  const PrimeClass cls = load_class_checked(g.class_spec);
  const std::size_t order = g.order == 0 ? 12 : g.order;
  const ClassConstants c = solve_constants(cls);
  const AsymptoticPrediction pred = predict_KH(h.graph, c, cls);
  // prime_occurrences: labeled occurrences summed over the primes of that size (EGF Occ_{H,P}).
  s << "pattern,size,prime_occurrences,K_H,exponent\n";
  for (std::size_t m = h.graph.size(); m <= order; ++m)
    s << h.name << ',' << m << ',' << to_string(cls.occurrence_total(h.graph, m)) << ','
      << format_double(pred.K_H) << ',' << to_string(pred.exponent) << '\n';
  emit(g, s.str());
  return 0;
}

struct ExperimentArgs {
  std::vector<std::size_t> sizes;
  std::size_t samples = 100;
  std::size_t injections = 1000;
  std::vector<std::string> patterns;
  std::size_t subtree_leaves = 0;
};

ExperimentConfig make_config(const Globals& g, const ExperimentArgs& a) {
  if (a.sizes.empty()) throw UsageError("--sizes is required");
  ExperimentConfig config;
  config.sizes = a.sizes;
  config.samples = a.samples;
  config.injections = a.injections;
  config.subtree_leaves = a.subtree_leaves;
  config.seed = g.seed;
  config.jobs = g.jobs;
  for (const auto& p : a.patterns) config.patterns.push_back(load_pattern(p));
  return config;
}

int cmd_density(const Globals& g, ExperimentArgs a) {
  const PrimeClass cls = load_class_checked(g.class_spec);
  ExperimentConfig config = make_config(g, a);
  if (config.patterns.empty()) {
    config.patterns.push_back({"K2", LabeledGraph::complete(2)});
    for (auto& p : cograph_patterns(4)) config.patterns.push_back(std::move(p));
  }
  const CountCache cache(cls, cache_order(g, *std::max_element(a.sizes.begin(), a.sizes.end())));
  const ExperimentReport report = density_experiment(cache, solve_constants(cls), config);
  emit(g, report.to_csv());
  return report.partial ? 3 : 0;
}

int cmd_scaling(const Globals& g, ExperimentArgs a) {
  const PrimeClass cls = load_class_checked(g.class_spec);
  ExperimentConfig config = make_config(g, a);
  if (config.patterns.empty()) config.patterns.push_back({"P4", LabeledGraph::path(4)});
  const CountCache cache(cls, cache_order(g, *std::max_element(a.sizes.begin(), a.sizes.end())));
  const ExperimentReport report = scaling_experiment(cache, solve_constants(cls), config);
  emit(g, report.to_csv());
  return report.partial ? 3 : 0;
}

int cmd_verify(const Globals& g, const std::vector<int>& only) {
  acceptance::Options options;
  options.only = only;
  options.jobs = g.jobs;
  options.on_result = [](const acceptance::CriterionResult& r) {
    std::cout << acceptance::format_line(r) << std::endl;
  };
  const auto results = acceptance::run(options);
  if (!g.out.empty()) write_text_file(g.out, acceptance::summary_json(results));
  bool ok = !results.empty();
  for (const auto& r : results) ok = ok && r.passed;
  return ok ? 0 : 1;
}

void add_experiment_options(CLI::App* sub, ExperimentArgs& a, bool subtree) {
  sub->add_option("--sizes", a.sizes, "Graph sizes")->delimiter(',')->required();
  sub->add_option("--samples", a.samples, "Uniform graphs per size")->check(CLI::PositiveNumber);
  sub->add_option("--injections", a.injections, "Random injections per graph")
      ->check(CLI::PositiveNumber);
  sub->add_option("--pattern", a.patterns,
                  "Pattern: builtin:P4, builtin:K3, builtin:C5, builtin:co-K3 or a graph file");
  if (subtree)
    sub->add_option("--subtree-leaves", a.subtree_leaves, "Also estimate the induced subtree law");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random graphs with prescribed prime nodes in their modular decomposition."};
  app.require_subcommand(1);
  Globals g;
  g.jobs = std::max(1U, std::thread::hardware_concurrency());
  app.add_option("--class", g.class_spec, "builtin:empty, builtin:paths, builtin:p4 or a class file");
  app.add_option("--seed", g.seed, "Base seed");
  app.add_option("--order", g.order, "Series order or sampler cache size");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string graph_path;
  auto* decompose = app.add_subcommand("decompose", "Modular decomposition tree of a graph file");
  decompose->add_option("graph", graph_path, "Graph file")->required();

  auto* counts = app.add_subcommand("counts", "Exact class counts with asymptotic prediction");
  auto* constants = app.add_subcommand("constants", "kappa, R, K, mu, C and p of the class");

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "Uniform random graphs of the class");
  sample->add_option("-n,--size", sample_args.size, "Number of vertices")->required();
  sample->add_option("--count", sample_args.count, "Write this many samples as one stream");
  sample->add_option("--out-dir", sample_args.out_dir, "Write one file per sample here");
  sample->add_flag("--tree", sample_args.tree, "Write decomposition trees instead of graphs");

  OccArgs occ_args;
  auto* occ = app.add_subcommand("occ", "Occurrence counts of a pattern");
  occ->add_option("--pattern", occ_args.pattern, "Pattern graph");
  occ->add_option("host", occ_args.host, "Count occurrences in this graph file");

  ExperimentArgs density_args;
  auto* density = app.add_subcommand("density", "Pattern densities against the Brownian cographon");
  add_experiment_options(density, density_args, true);
  ExperimentArgs scaling_args;
  auto* scaling = app.add_subcommand("scaling", "E[Occ_H] n^(beta - |H|) against K_H");
  add_experiment_options(scaling, scaling_args, false);

  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--only", only, "Criterion ids")->delimiter(',');

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (*decompose) return cmd_decompose(g, graph_path);
    if (*counts) return cmd_counts(g);
    if (*constants) return cmd_constants(g);
    if (*sample) return cmd_sample(g, sample_args);
    if (*occ) return cmd_occ(g, occ_args);
    if (*density) return cmd_density(g, density_args);
    if (*scaling) return cmd_scaling(g, scaling_args);
    if (*verify) return cmd_verify(g, only);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return usage_error;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

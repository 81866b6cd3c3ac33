// chainrank: ordinal-valued chain-condition invariants of finite marked
// groups. Subcommands: rank (invariant report), tree (state DAG or literal
// index tree), oracle (longest-chain witnesses), verify (property suites
// over the built-in catalog).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chainrank/cache.hpp"
#include "chainrank/catalog.hpp"
#include "chainrank/dsl.hpp"
#include "chainrank/error.hpp"
#include "chainrank/invariants.hpp"
#include "chainrank/oracle.hpp"
#include "chainrank/report.hpp"
#include "chainrank/verify.hpp"

namespace {

using namespace chainrank;

struct CommonOpts {
  std::size_t size_limit = FinGroup::kDefaultSizeLimit;
  std::size_t node_budget = kDefaultNodeBudget;
  std::vector<std::string> params;
  std::uint64_t marking_seed = 0;
};

EvalOptions eval_options(const CommonOpts& c) {
  EvalOptions o;
  o.size_limit = c.size_limit;
  for (const std::string& p : c.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos)
      throw Error(errc::invalid_input, "--param expects name=value, got '" + p + "'");
    o.params[p.substr(0, eq)] = std::stoull(p.substr(eq + 1));
  }
  return o;
}

GroupPtr group_from_file(const std::string& path, std::size_t size_limit) {
  std::ifstream in(path);
  if (!in) throw Error(errc::invalid_input, "cannot open " + path);
  std::string line;
  std::size_t degree = 0;
  std::vector<Permutation> gens;
  bool have_degree = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    if (!have_degree) {
      std::istringstream ss(line);
      std::string kw;
      ss >> kw >> degree;
      if (kw != "degree" || degree == 0)
        throw Error(errc::invalid_input, "generator file must start with 'degree N'");
      have_degree = true;
      continue;
    }
    gens.push_back(Permutation::from_cycles(degree, line));
  }
  if (!have_degree) throw Error(errc::invalid_input, "generator file is empty");
  return FinGroup::generate(degree, std::move(gens), size_limit);
}

struct LoadedGroup {
  GroupPtr group;
  std::string name;
};

LoadedGroup load_input(const std::string& input, const CommonOpts& c) {
  if (std::filesystem::exists(input))
    return {group_from_file(input, c.size_limit), std::filesystem::path(input).filename().string()};
  ExprPtr e = parse_expression(input);
  return {eval_expression(*e, eval_options(c)), render_expression(*e)};
}

MarkedGroup marking_for(const LoadedGroup& lg, const CommonOpts& c) {
  MarkedGroup m = default_marking(lg.group);
  if (c.marking_seed != 0) m = remark(m, c.marking_seed);
  return m;
}

std::string report_table(const RankReport& r) {
  std::ostringstream out;
  out << "group " << r.name << "  order=" << r.order << " degree=" << r.degree << "\n";
  auto row = [&](const char* k, const std::string& v) { out << "  " << k << ": " << v << "\n"; };
  if (r.centralizer) row("centralizer_rank", r.centralizer->to_string());
  if (r.subgroup) row("subgroup_rank", r.subgroup->to_string());
  if (r.maxn) row("maxn_length", r.maxn->to_string());
  if (r.xi) row("xi", r.xi->to_string());
  if (r.deg) row("deg", std::to_string(*r.deg));
  return out.str();
}

int run(int argc, char** argv) {
  CLI::App app{"ordinal-valued chain-condition invariants of finite marked groups"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts common;
  bool no_cache = false;
  app.add_option("--size-limit", common.size_limit, "maximum group order for construction");
  app.add_option("--node-budget", common.node_budget, "maximum tree states per rank computation");
  app.add_option("--param", common.params, "instantiate a symbolic parameter, name=value");
  app.add_flag("--no-cache", no_cache, "bypass the result cache");

  auto* rank_cmd = app.add_subcommand("rank", "compute invariants of a group");
  std::string rank_input, rank_invariant = "all", rank_format = "json";
  rank_cmd->add_option("input", rank_input, "expression or generator file")->required();
  rank_cmd->add_option("--invariant", rank_invariant, "cent|max|maxn|xi|deg|all");
  rank_cmd->add_option("--marking-seed", common.marking_seed, "seeded re-marking (0 = canonical)");
  rank_cmd->add_option("--format", rank_format, "json|table");

  auto* tree_cmd = app.add_subcommand("tree", "emit the state DAG or literal index tree");
  std::string tree_input, tree_invariant = "max", tree_format = "dot";
  std::uint64_t tree_offset = 1;
  std::size_t tree_explicit = 0;
  tree_cmd->add_option("input", tree_input, "expression or generator file")->required();
  tree_cmd->add_option("--invariant", tree_invariant, "cent|max|maxn|xi");
  tree_cmd->add_option("--offset", tree_offset, "decomposition offset (xi only)");
  tree_cmd->add_option("--format", tree_format, "dot|json");
  tree_cmd->add_option("--explicit", tree_explicit, "emit the literal index tree up to this index bound");
  tree_cmd->add_option("--marking-seed", common.marking_seed, "seeded re-marking (0 = canonical)");

  auto* oracle_cmd = app.add_subcommand("oracle", "longest-chain oracle with witness");
  std::string oracle_input, oracle_check = "max";
  std::size_t oracle_limit = 0;
  oracle_cmd->add_option("input", oracle_input, "expression or generator file")->required();
  oracle_cmd->add_option("--check", oracle_check, "cent|max|maxn");
  oracle_cmd->add_option("--oracle-limit", oracle_limit,
                         "lattice size cap (default 96 for max, 512 otherwise)");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites over the catalog");
  std::string verify_suite = "all";
  VerifyOptions vopts;
  verify_cmd->add_option("--suite", verify_suite, "lemmas|oracle|marking|all");
  verify_cmd->add_option("--max-order", vopts.max_order, "catalog order filter");
  verify_cmd->add_option("--seed", vopts.seed, "base seed for re-markings and random trees");
  verify_cmd->add_option("--jobs", vopts.jobs, "parallel jobs across catalog entries");
  verify_cmd->add_option("--trees", vopts.random_trees, "random trees for the tree lemmas");
  verify_cmd->add_option("--remarkings", vopts.remarkings, "re-markings per group");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (rank_cmd->parsed()) {
    InvariantSelection sel;
    if (rank_invariant == "all") sel = InvariantSelection::all();
    else if (rank_invariant == "cent") sel.cent = true;
    else if (rank_invariant == "max") sel.max = true;
    else if (rank_invariant == "maxn") sel.maxn = true;
    else if (rank_invariant == "xi" || rank_invariant == "deg") sel.xi_deg = true;
    else throw Error(errc::invalid_input, "unknown invariant " + rank_invariant);

    LoadedGroup lg = load_input(rank_input, common);
    MarkedGroup m = marking_for(lg, common);
    Cache cache = Cache::resolve(no_cache);
    std::string key = content_key(m, sel.tag());
    if (auto hit = cache.load(key); hit && rank_format == "json") {
      std::cout << *hit;
      return 0;
    }
    RankReport r = rank_report(m, sel, lg.name, common.node_budget);
    if (rank_format == "table") {
      std::cout << report_table(r);
      return 0;
    }
    std::string text = to_json(r).dump(2) + "\n";
    cache.store(key, text);
    std::cout << text;
    return 0;
  }

  if (tree_cmd->parsed()) {
    LoadedGroup lg = load_input(tree_input, common);
    MarkedGroup m = marking_for(lg, common);
    std::unique_ptr<TreeSpec> spec;
    if (tree_invariant == "cent") spec = centralizer_tree(m);
    else if (tree_invariant == "max") spec = subgroup_tree(m);
    else if (tree_invariant == "maxn") spec = maxn_tree(m);
    else if (tree_invariant == "xi") spec = decomposition_tree(m, tree_offset);
    else throw Error(errc::invalid_input, "unknown invariant " + tree_invariant);

    if (tree_explicit > 0) {
      FiniteTree t = expand_explicit(*spec, tree_explicit, common.node_budget);
      if (tree_format == "json") {
        std::cout << to_json(t).dump(2) << "\n";
      } else {
        std::cout << "digraph tree {\n";
        for (const auto& seq : t.nodes()) {
          std::string id = "n";
          for (unsigned x : seq) id += "_" + std::to_string(x);
          std::cout << "  " << id << ";\n";
          if (!seq.empty()) {
            std::string pid = "n";
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) pid += "_" + std::to_string(seq[i]);
            std::cout << "  " << pid << " -> " << id << ";\n";
          }
        }
        std::cout << "}\n";
      }
      return 0;
    }
    Dag dag = tree_to_dag(*spec, common.node_budget);
    if (tree_format == "json")
      std::cout << to_json(dag).dump(2) << "\n";
    else
      std::cout << to_dot(dag);
    return 0;
  }

  if (oracle_cmd->parsed()) {
    LoadedGroup lg = load_input(oracle_input, common);
    Subgroup whole = whole_group(lg.group);
    ChainResult r;
    if (oracle_check == "cent") r = longest_centralizer_chain(whole, oracle_limit ? oracle_limit : 512);
    else if (oracle_check == "max") r = longest_subgroup_chain(whole, oracle_limit ? oracle_limit : 96);
    else if (oracle_check == "maxn") r = longest_normal_chain(whole, oracle_limit ? oracle_limit : 512);
    else throw Error(errc::invalid_input, "unknown oracle check " + oracle_check);
    std::cout << to_json(r).dump(2) << "\n";
    return 0;
  }

  if (verify_cmd->parsed()) {
    vopts.node_budget = common.node_budget;
    vopts.size_limit = common.size_limit;
    VerifyOutcome out;
    if (verify_suite == "oracle") out = run_oracle_suite(vopts);
    else if (verify_suite == "marking") out = run_marking_suite(vopts);
    else if (verify_suite == "lemmas") {
      out = run_lemma_suite(vopts);
      out.merge(run_tree_lemma_suite(vopts));
    } else if (verify_suite == "all") out = run_all_suites(vopts);
    else if (verify_suite == "selftest-failure") {
      // Fixture suite: reports one deliberate failure so the exit-code
      // contract can be exercised.
      out.suite = "selftest-failure";
      out.cases = 1;
      out.failures.push_back({"fixture", "deliberate-failure", "pass", "fail"});
    } else throw Error(errc::invalid_input, "unknown suite " + verify_suite);
    std::cout << to_json(out).dump(2) << "\n";
    return out.ok() ? 0 : 1;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const chainrank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}

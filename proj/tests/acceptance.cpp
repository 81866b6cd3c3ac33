// Acceptance suite: runs every acceptance criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "chainrank/catalog.hpp"
#include "chainrank/dsl.hpp"
#include "chainrank/invariants.hpp"
#include "chainrank/oracle.hpp"
#include "chainrank/report.hpp"
#include "chainrank/verify.hpp"

using namespace chainrank;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }

  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

GroupPtr ev(const std::string& expr) { return eval_expression(*parse_expression(expr)); }

std::vector<std::pair<CatalogEntry, GroupPtr>> catalog_groups(std::size_t max_order) {
  std::vector<std::pair<CatalogEntry, GroupPtr>> out;
  for (const CatalogEntry& e : builtin_catalog())
    if (e.expected_order <= max_order) out.emplace_back(e, ev(e.expression));
  return out;
}

// --- criterion 1: rank-chain oracle equivalence, catalog <= 64, < 5 min ----
Criterion criterion1() {
  Criterion c("1 rank-chain oracle equivalence (catalog <= 64, exact, < 5 min)");
  auto t0 = Clock::now();
  for (auto& [entry, g] : catalog_groups(64)) {
    MarkedGroup m = default_marking(g);
    Subgroup whole = whole_group(g);
    if (centralizer_rank(m) != Ordinal::finite(longest_centralizer_chain(whole).length + 1))
      c.fail(entry.name + ": centralizer rank != chain + 1");
    if (subgroup_rank(m) != Ordinal::finite(longest_subgroup_chain(whole).length + 1))
      c.fail(entry.name + ": subgroup rank != chain + 1");
    if (maxn_length(m) != Ordinal::finite(longest_normal_chain(whole).length + 1))
      c.fail(entry.name + ": maxn length != chain + 1");
  }
  double secs = seconds_since(t0);
  c.require(secs < 300.0, "suite exceeded 5 minutes");
  c.detail += c.detail.empty() ? "" : "; ";
  c.detail += std::to_string(secs).substr(0, 5) + "s single-threaded";
  return c;
}

// --- criterion 2: explicit-vs-dedup equivalence, catalog <= 24 -------------
Criterion criterion2() {
  Criterion c("2 explicit-vs-dedup tree equivalence (catalog <= 24, all four invariants)");
  for (auto& [entry, g] : catalog_groups(24)) {
    MarkedGroup m = default_marking(g);
    for (auto [which, tag] :
         {std::pair{TreeInvariant::centralizer, "cent"}, {TreeInvariant::subgroup, "max"},
          {TreeInvariant::maxn, "maxn"}, {TreeInvariant::decomposition, "decomposition"}})
      if (!explicit_rank_crosscheck(m, which))
        c.fail(entry.name + ": explicit/dedup mismatch for " + tag);
  }
  return c;
}

// --- criterion 3: marking invariance, 20 seeded re-markings ----------------
Criterion criterion3() {
  Criterion c("3 marking invariance (20 seeded re-markings per catalog group)");
  for (auto& [entry, g] : catalog_groups(SIZE_MAX)) {
    MarkedGroup base = default_marking(g);
    Ordinal cent = centralizer_rank(base);
    Ordinal sub = subgroup_rank(base);
    Ordinal norm = maxn_length(base);
    XiDeg xd = decomposition_rank_and_degree(base);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      MarkedGroup m = remark(base, seed);
      if (centralizer_rank(m) != cent) c.fail(entry.name + ": centralizer rank moved");
      if (subgroup_rank(m) != sub) c.fail(entry.name + ": subgroup rank moved");
      if (maxn_length(m) != norm) c.fail(entry.name + ": maxn length moved");
      XiDeg other = decomposition_rank_and_degree(m);
      if (other.xi != xd.xi) c.fail(entry.name + ": xi moved");
      if (other.degree != xd.degree) c.fail(entry.name + ": deg moved");
      if (!c.pass) return c;
    }
  }
  return c;
}

// --- criterion 4: lemma suite ----------------------------------------------
Criterion criterion4() {
  Criterion c("4 lemma suite (monotonicity, products, quotients, wreaths, offsets)");
  VerifyOptions opts;
  opts.max_order = SIZE_MAX;
  opts.seed = 1;
  VerifyOutcome out = run_lemma_suite(opts);
  for (const VerifyFailure& f : out.failures)
    c.fail(f.group + " " + f.check + ": expected " + f.expected + ", observed " + f.observed);
  c.detail = std::to_string(out.cases) + " checks";
  return c;
}

// --- criterion 5: specific derived values, oracle-recomputed ---------------
Criterion criterion5() {
  Criterion c("5 specific derived values reproduced exactly");

  auto check_pair = [&](const char* name, const Ordinal& via_tree, std::size_t chain_len,
                        std::uint64_t expect) {
    if (via_tree != Ordinal::finite(expect))
      c.fail(std::string(name) + " tree value != " + std::to_string(expect));
    if (chain_len + 1 != expect)
      c.fail(std::string(name) + " oracle chain + 1 != " + std::to_string(expect));
  };

  GroupPtr s3 = ev("S(3)");
  GroupPtr q8 = ev("Q8");
  GroupPtr s4 = ev("S(4)");
  GroupPtr d4 = ev("D(4)");
  check_pair("centralizer_rank(S3)", centralizer_rank(default_marking(s3)),
             longest_centralizer_chain(whole_group(s3)).length, 3);
  check_pair("centralizer_rank(Q8)", centralizer_rank(default_marking(q8)),
             longest_centralizer_chain(whole_group(q8)).length, 3);
  check_pair("subgroup_rank(S4)", subgroup_rank(default_marking(s4)),
             longest_subgroup_chain(whole_group(s4)).length, 5);
  check_pair("maxn_length(D4)", maxn_length(default_marking(d4)),
             longest_normal_chain(whole_group(d4)).length, 4);

  // rho(T^1(S3)) = 3, with the explicit index tree as the independent route.
  MarkedGroup m3 = default_marking(s3);
  auto explicit_rank = [&](std::uint64_t offset) {
    DecompositionTreeSpec spec(m3, offset);
    return expand_explicit(spec, spec.index_count()).rank();
  };
  if (decomposition_tree_rank(m3, 1) != Ordinal::finite(3)) c.fail("rho(T^1(S3)) != 3 (lazy)");
  if (explicit_rank(1) != Ordinal::finite(3)) c.fail("rho(T^1(S3)) != 3 (explicit)");

  // xi(S3) = 2 and deg(S3) = 5, recomputed by scanning explicit-route ranks.
  XiDeg xd = decomposition_rank_and_degree(m3);
  Ordinal xi_scan;
  std::uint64_t deg_scan = 0;
  for (std::uint64_t l = 1; l <= s3->order(); ++l) {
    Ordinal r = explicit_rank(l);
    if (deg_scan == 0 || r < xi_scan) {
      xi_scan = r;
      deg_scan = l;
    }
  }
  if (xd.xi != Ordinal::finite(2) || xi_scan != Ordinal::finite(2)) c.fail("xi(S3) != 2");
  if (xd.degree != 5 || deg_scan != 5) c.fail("deg(S3) != 5");

  // The symbolic subgroup rank of the integers.
  if (symbolic_subgroup_rank_integers() != Ordinal::omega() + Ordinal::finite(1))
    c.fail("symbolic rank of Z != w+1");
  if (Ordinal::parse("w+1") != symbolic_subgroup_rank_integers())
    c.fail("textual w+1 does not round-trip");
  return c;
}

// --- criterion 6: tree lemmas on 1000 random trees, < 30 s -----------------
Criterion criterion6() {
  Criterion c("6 tree-lemma properties on 1000 random finite trees (< 30 s)");
  auto t0 = Clock::now();
  VerifyOptions opts;
  opts.random_trees = 1000;
  opts.seed = 2026;
  VerifyOutcome out = run_tree_lemma_suite(opts);
  for (const VerifyFailure& f : out.failures) c.fail(f.check);
  double secs = seconds_since(t0);
  c.require(secs < 30.0, "exceeded 30 seconds");
  c.detail = std::to_string(out.cases) + " checks in " + std::to_string(secs).substr(0, 5) + "s";
  return c;
}

// --- criterion 7: ordinal arithmetic property suite, < 5 s -----------------
Criterion criterion7() {
  Criterion c("7 ordinal arithmetic property suite (< 5 s)");
  auto t0 = Clock::now();
  auto fin = [](std::uint64_t n) { return Ordinal::finite(n); };
  Ordinal w = Ordinal::omega();

  std::vector<Ordinal> pool{fin(0), fin(1), fin(2), fin(3), fin(7), w, w + fin(1), w * fin(2),
                            w * fin(2) + fin(3), Ordinal::omega_pow(fin(2)),
                            Ordinal::omega_pow(fin(2), 2) + w + fin(1), Ordinal::omega_pow(w)};
  for (const Ordinal& a : pool)
    for (const Ordinal& b : pool) {
      for (const Ordinal& x : pool) {
        if ((a + b) + x != a + (b + x)) c.fail("addition not associative");
        if ((a * b) * x != a * (b * x)) c.fail("multiplication not associative");
        if (a * (b + x) != a * b + a * x) c.fail("left distributivity fails");
        if (b < x && !(a + b < a + x)) c.fail("addition not strictly right-monotone");
        if (b < x && !a.is_zero() && !(a * b < a * x))
          c.fail("multiplication not strictly right-monotone");
      }
      int rel = (a < b) + (a == b) + (a > b);
      if (rel != 1) c.fail("comparison not a total order");
      if (Ordinal::parse((a + b).to_string()) != a + b) c.fail("round-trip fails");
    }

  if (fin(1) + w != w) c.fail("1 + w != w");
  if (w + fin(1) == w) c.fail("w + 1 == w");
  for (std::uint64_t alpha = 0; alpha <= 5; ++alpha) {
    if (w * (fin(alpha) + fin(1)) != w * fin(alpha + 1)) c.fail("w*(a+1) expansion fails");
    if (w * (fin(alpha) + fin(1)) != w * fin(alpha) + w) c.fail("w*(a+1) != w*a + w");
  }
  double secs = seconds_since(t0);
  c.require(secs < 5.0, "exceeded 5 seconds");
  return c;
}

// --- criterion 8: CLI contract ---------------------------------------------
struct CliRun {
  int code;
  std::string out;
};

CliRun sh(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  return {WEXITSTATUS(pclose(pipe)), out};
}

Criterion criterion8() {
  Criterion c("8 CLI contract (exit codes, JSON schemas, cache determinism)");
  const char* cli_env = std::getenv("CHAINRANK_CLI");
  if (!cli_env) {
    c.fail("CHAINRANK_CLI not set");
    return c;
  }
  std::string cli = std::string("'") + cli_env + "'";

  // exit-code matrix
  if (sh(cli + " rank 'C(3)' --no-cache").code != 0) c.fail("success exit code != 0");
  if (sh(cli + " verify --suite selftest-failure").code != 1)
    c.fail("verification-failure exit code != 1");
  if (sh(cli + " rank 'C(' --no-cache").code != 2) c.fail("input-error exit code != 2");
  if (sh(cli + " rank 'S(5)' --size-limit 10 --no-cache").code != 3)
    c.fail("resource-limit exit code != 3");

  // JSON schemas
  CliRun rank = sh(cli + " rank 'S(3)' --invariant all --no-cache");
  if (rank.code != 0 || !valid_rank_report_json(json::parse(rank.out, nullptr, false)))
    c.fail("rank report schema invalid");
  else {
    json j = json::parse(rank.out);
    if (j["invariants"]["centralizer_rank"] != "3" || j["invariants"]["deg"] != 5)
      c.fail("rank report values wrong");
  }
  CliRun oracle = sh(cli + " oracle 'D(4)' --check maxn");
  if (oracle.code != 0 || !valid_chain_result_json(json::parse(oracle.out, nullptr, false)))
    c.fail("oracle schema invalid");
  CliRun tree = sh(cli + " tree 'C(4)' --invariant max --format json");
  if (tree.code != 0 || !valid_dag_json(json::parse(tree.out, nullptr, false)))
    c.fail("tree schema invalid");
  CliRun verify = sh(cli + " verify --suite oracle --max-order 12 --trees 10");
  if (verify.code != 0 || !valid_verify_outcome_json(json::parse(verify.out, nullptr, false)))
    c.fail("verify outcome schema invalid");

  // cache determinism: byte-identical outputs across runs with the same key
  auto dir = std::filesystem::temp_directory_path() / "chainrank-acceptance-cache";
  std::filesystem::remove_all(dir);
  std::string env = "CHAINRANK_CACHE_DIR=" + dir.string() + " ";
  CliRun c1 = sh(env + cli + " rank 'Q8' --invariant all");
  CliRun c2 = sh(env + cli + " rank 'Q8' --invariant all");
  CliRun c3 = sh(env + cli + " rank 'Q8' --invariant all");
  if (c1.code != 0 || c1.out != c2.out || c2.out != c3.out)
    c.fail("cached outputs are not byte-identical");
  CliRun fresh = sh(env + cli + " rank 'Q8' --invariant all --no-cache");
  json a = json::parse(c1.out, nullptr, false);
  json b = json::parse(fresh.out, nullptr, false);
  if (a.is_discarded() || b.is_discarded()) {
    c.fail("cache outputs unparsable");
  } else {
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    if (a != b) c.fail("cached and fresh reports differ beyond timing");
  }
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  auto t0 = Clock::now();
  results.push_back(criterion1());
  results.push_back(criterion2());
  results.push_back(criterion3());
  results.push_back(criterion4());
  results.push_back(criterion5());
  results.push_back(criterion6());
  results.push_back(criterion7());
  results.push_back(criterion8());

  bool all = true;
  for (const Criterion& c : results) {
    std::printf("[%s] criterion %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    all = all && c.pass;
  }
  std::printf("%s (%.1fs total)\n", all ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              seconds_since(t0));
  return all ? 0 : 1;
}

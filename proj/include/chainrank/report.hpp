#pragma once

#include <string>

#include <json.hpp>

#include "chainrank/invariants.hpp"
#include "chainrank/oracle.hpp"
#include "chainrank/verify.hpp"
#include "chainrank/wftree.hpp"

namespace chainrank {

using json = nlohmann::json;

inline json to_json(const RankReport& r) {
  json j;
  j["name"] = r.name;
  j["group"] = {{"order", r.order}, {"degree", r.degree}, {"generators", r.generators}};
  j["marking"] = {{"length", r.marking_length}, {"seed", r.marking_seed}};
  json inv = json::object();
  if (r.centralizer) inv["centralizer_rank"] = r.centralizer->to_string();
  if (r.subgroup) inv["subgroup_rank"] = r.subgroup->to_string();
  if (r.maxn) inv["maxn_length"] = r.maxn->to_string();
  if (r.xi) inv["xi"] = r.xi->to_string();
  if (r.deg) inv["deg"] = *r.deg;
  j["invariants"] = std::move(inv);
  j["state_counts"] = r.state_counts;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline json to_json(const ChainResult& r) {
  json witness = json::array();
  for (const Subgroup& h : r.witness) {
    json gens = json::array();
    for (Elem g : subgroup_generators(h)) gens.push_back(h.parent->word_string(g));
    witness.push_back({{"order", h.order()}, {"generators", std::move(gens)}});
  }
  return {{"length", r.length}, {"witness", std::move(witness)}};
}

inline json to_json(const VerifyOutcome& v) {
  json failures = json::array();
  for (const VerifyFailure& f : v.failures)
    failures.push_back({{"group", f.group},
                        {"check", f.check},
                        {"expected", f.expected},
                        {"observed", f.observed}});
  return {{"suite", v.suite}, {"cases", v.cases}, {"failures", std::move(failures)}};
}

inline json to_json(const Dag& dag) {
  json nodes = json::array();
  for (std::size_t i = 0; i < dag.nodes.size(); ++i)
    nodes.push_back({{"key", "s" + std::to_string(i)},
                     {"label", dag.nodes[i].label},
                     {"rank", dag.nodes[i].node_rank}});
  json edges = json::array();
  for (const auto& [from, to] : dag.edges) edges.push_back({from, to});
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

inline json to_json(const FiniteTree& t) {
  json nodes = json::array();
  for (const auto& seq : t.nodes()) nodes.push_back(seq);
  return {{"nodes", std::move(nodes)}};
}

// Structural validators for the published JSON shapes, used by the CLI
// contract tests.

inline bool valid_ordinal_string(const json& v) {
  if (!v.is_string()) return false;
  try {
    Ordinal::parse(v.get<std::string>());
    return true;
  } catch (const Error&) {
    return false;
  }
}

inline bool valid_rank_report_json(const json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("marking") ||
      !j.contains("invariants") || !j.contains("state_counts") || !j.contains("elapsed_ms"))
    return false;
  const json& g = j["group"];
  if (!g.is_object() || !g.contains("order") || !g["order"].is_number_unsigned() ||
      !g.contains("degree") || !g["degree"].is_number_unsigned() || !g.contains("generators") ||
      !g["generators"].is_array())
    return false;
  const json& m = j["marking"];
  if (!m.is_object() || !m.contains("length") || !m["length"].is_number_unsigned() ||
      !m.contains("seed") || !m["seed"].is_number_unsigned())
    return false;
  const json& inv = j["invariants"];
  if (!inv.is_object()) return false;
  for (const char* key : {"centralizer_rank", "subgroup_rank", "maxn_length", "xi"})
    if (inv.contains(key) && !valid_ordinal_string(inv[key])) return false;
  if (inv.contains("deg") && !inv["deg"].is_number_unsigned()) return false;
  return j["state_counts"].is_object() && j["elapsed_ms"].is_number_unsigned();
}

inline bool valid_chain_result_json(const json& j) {
  if (!j.is_object() || !j.contains("length") || !j["length"].is_number_unsigned() ||
      !j.contains("witness") || !j["witness"].is_array())
    return false;
  for (const json& w : j["witness"])
    if (!w.is_object() || !w.contains("order") || !w["order"].is_number_unsigned() ||
        !w.contains("generators") || !w["generators"].is_array())
      return false;
  return true;
}

inline bool valid_dag_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array() || !j.contains("edges") ||
      !j["edges"].is_array())
    return false;
  for (const json& n : j["nodes"])
    if (!n.is_object() || !n.contains("key") || !n.contains("rank") ||
        !n["rank"].is_number_unsigned())
      return false;
  for (const json& e : j["edges"])
    if (!e.is_array() || e.size() != 2) return false;
  return true;
}

inline bool valid_verify_outcome_json(const json& j) {
  if (!j.is_object() || !j.contains("suite") || !j.contains("cases") ||
      !j["cases"].is_number_unsigned() || !j.contains("failures") || !j["failures"].is_array())
    return false;
  for (const json& f : j["failures"])
    if (!f.is_object() || !f.contains("group") || !f.contains("check")) return false;
  return true;
}

}  // namespace chainrank

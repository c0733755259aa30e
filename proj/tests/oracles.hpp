#pragma once

// Test-only reference implementations. None of these call into the code
// paths they are used to check.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ppco/ppco.hpp"

namespace ppco::oracle {

// The two published batch columns, exactly as printed, in printed order.
using Column = std::vector<std::pair<std::string, int>>;

inline const Column& published_vp1() {
  static const Column c = {{"Artifact", 1}, {"Function", 2},     {"Behavior", 2},    {"Flows", 2},
                           {"Geometry-Form", 1}, {"Sub-Artifact", 2}, {"Assembly", 2}, {"Constraints", 1},
                           {"Requirements", 2},  {"Group", 1}};
  return c;
}

inline const Column& published_vp2() {
  static const Column c = {{"Mechanic", 1},      {"Artifact", 2},     {"Function", 2},    {"Behavior", 2},
                           {"Flows", 3},         {"Geometry-Form", 2}, {"Sub-Artifact", 3}, {"Assembly", 3},
                           {"Constraints", 1},   {"Requirements", 3}, {"Group", 1}};
  return c;
}

/// Per-batch min over any number of columns, scripted by hand with a map.
inline std::map<std::string, int> min_merge(const std::vector<Column>& columns) {
  std::map<std::string, int> out;
  for (const auto& col : columns) {
    for (const auto& [batch, level] : col) {
      auto it = out.find(batch);
      if (it == out.end() || level < it->second) out[batch] = level;
    }
  }
  return out;
}

inline std::map<std::string, int> as_map(const ConnexionLevelList& list) {
  std::map<std::string, int> out;
  for (const auto& e : list) out[e.batch.str()] = e.level.value();
  return out;
}

inline std::map<std::string, int> as_map(const Column& col) {
  return {col.begin(), col.end()};
}

/// One-shot union/min/provenance over all lists.
inline std::map<std::string, std::pair<int, std::set<std::string>>> brute_merge(
    const std::vector<ConnexionLevelList>& lists) {
  std::map<std::string, std::pair<int, std::set<std::string>>> out;
  for (const auto& list : lists) {
    for (const auto& e : list) {
      auto& slot = out.try_emplace(e.batch.str(), e.level.value(), std::set<std::string>{}).first->second;
      slot.first = std::min(slot.first, e.level.value());
      for (const auto& p : e.provenance) slot.second.insert(p.str());
    }
  }
  return out;
}

inline std::map<std::string, std::pair<int, std::set<std::string>>> as_full_map(const ConnexionLevelList& list) {
  std::map<std::string, std::pair<int, std::set<std::string>>> out;
  for (const auto& e : list) {
    std::set<std::string> prov;
    for (const auto& p : e.provenance) prov.insert(p.str());
    out[e.batch.str()] = {e.level.value(), prov};
  }
  return out;
}

/// Independent structural validator: returns the set of violated invariant
/// families, computed by naive scans (root count, bounded parent walks,
/// linear lookups).
inline std::set<std::string> reference_validate(const PpcoModel& m) {
  std::set<std::string> bad;
  auto has_artifact = [&](const ArtifactId& id) {
    return std::count_if(m.artifacts.begin(), m.artifacts.end(), [&](const Artifact& a) { return a.id == id; }) > 0;
  };
  int roots = 0;
  for (const auto& a : m.artifacts) {
    if (std::count_if(m.artifacts.begin(), m.artifacts.end(), [&](const Artifact& b) { return b.id == a.id; }) > 1) {
      bad.insert("artifact.duplicate_id");
    }
    if (!a.parent_id) {
      ++roots;
      continue;
    }
    if (!has_artifact(*a.parent_id)) {
      bad.insert("decomposition.dangling_parent");
      continue;
    }
    // Walk up at most |artifacts| steps; failing to reach a root means a cycle.
    ArtifactId cur = a.id;
    bool reached_root = false;
    for (std::size_t i = 0; i <= m.artifacts.size() && !reached_root; ++i) {
      auto it = std::find_if(m.artifacts.begin(), m.artifacts.end(), [&](const Artifact& b) { return b.id == cur; });
      if (it == m.artifacts.end()) break;
      if (!it->parent_id) reached_root = true;
      else cur = *it->parent_id;
    }
    if (!reached_root && has_artifact(cur)) bad.insert("decomposition.cycle");
  }
  if (roots == 0) bad.insert("decomposition.no_root");
  if (roots > 1) bad.insert("decomposition.multiple_roots");
  for (const auto& i : m.interactions) {
    if (!has_artifact(i.endpoint_a) || !has_artifact(i.endpoint_b)) bad.insert("interaction.dangling_endpoint");
    else if (i.endpoint_a == i.endpoint_b) bad.insert("interaction.self_loop");
  }
  for (const auto& t : m.tasks) {
    bool ok = false;
    for (const auto& a : m.activities) ok = ok || a.id == t.activity_id;
    if (!ok) bad.insert("task.dangling_activity");
  }
  for (const auto& f : m.task_flows) {
    bool from = false, to = false;
    for (const auto& t : m.tasks) {
      from = from || t.id == f.from_task;
      to = to || t.id == f.to_task;
    }
    if (!from || !to) bad.insert("taskflow.dangling_endpoint");
    else if (f.from_task == f.to_task) bad.insert("taskflow.self_loop");
  }
  const auto& teams = m.organization.teams;
  auto cell = [&](const TeamId& a, const TeamId& b) -> long long {
    auto r = m.organization.collaboration_matrix.find(a);
    if (r == m.organization.collaboration_matrix.end()) return 0;
    auto c = r->second.find(b);
    return c == r->second.end() ? 0 : c->second;
  };
  for (const auto& a : teams) {
    if (!has_artifact(a.responsibility_artifact_id)) bad.insert("organization.dangling_responsibility");
    if (cell(a.id, a.id) != 0) bad.insert("organization.nonzero_diagonal");
    for (const auto& b : teams) {
      if (cell(a.id, b.id) != cell(b.id, a.id)) bad.insert("organization.asymmetric_matrix");
    }
  }
  return bad;
}

/// Unanimity rule over a decision multiset.
enum class Outcome { Pending, Effective, Rejected };

inline Outcome unanimity(const std::set<ActorId>& concerned, const std::vector<std::pair<ActorId, Decision>>& ds) {
  for (const auto& [_, d] : ds) {
    if (d == Decision::Reject) return Outcome::Rejected;
  }
  std::multiset<ActorId> approvers;
  for (const auto& [a, _] : ds) approvers.insert(a);
  std::multiset<ActorId> expected(concerned.begin(), concerned.end());
  return approvers == expected ? Outcome::Effective : Outcome::Pending;
}

// ---------------------------------------------------------------------------
// Generators

inline const std::vector<std::string>& batch_pool() {
  static const std::vector<std::string> pool = {"Artifact", "Assembly",     "Behavior",  "Constraints",
                                                "Flows",    "Function",     "Geometry-Form", "Group",
                                                "Mechanic", "Requirements", "Sub-Artifact",  "Thermal"};
  return pool;
}

inline ConnexionLevelList random_list(std::mt19937& rng, const ViewpointId& vp, std::size_t max_batches = 12) {
  std::map<BatchKind, BatchLevel> picks;
  std::uniform_int_distribution<std::size_t> count(0, max_batches);
  std::uniform_int_distribution<std::size_t> which(0, batch_pool().size() - 1);
  std::uniform_int_distribution<int> level(1, 5);
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) picks.insert_or_assign(BatchKind(batch_pool()[which(rng)]), BatchLevel(level(rng)));
  ConnexionLevelList out;
  for (const auto& [b, l] : picks) out.push_back({b, l, {vp}});
  return out;
}

inline const std::vector<std::string>& discipline_pool() {
  static const std::vector<std::string> pool = {"geometry", "mechanic", "requirements", "manufacturing"};
  return pool;
}

inline const std::vector<std::string>& activity_pool() {
  static const std::vector<std::string> pool = {"RequirementsAnalysis", "ShapeGlobalDesign", "MechanicalDesign",
                                                "LayoutFeasibility"};
  return pool;
}

inline Policy random_policy(std::mt19937& rng) {
  std::uniform_int_distribution<int> rules(0, 6), grants(1, 6), level(1, 5), comp(1, 5), coin(0, 3);
  std::uniform_int_distribution<std::size_t> d(0, discipline_pool().size() - 1), a(0, activity_pool().size() - 1),
      b(0, batch_pool().size() - 1);
  Policy p;
  int n = rules(rng);
  for (int i = 0; i < n; ++i) {
    PolicyRule r;
    if (coin(rng) != 0) r.discipline.tag = discipline_pool()[d(rng)];
    if (coin(rng) == 0) r.activity.tag = activity_pool()[a(rng)];
    r.min_competence = CompetenceLevel(comp(rng));
    std::map<BatchKind, BatchLevel> g;
    int k = grants(rng);
    for (int j = 0; j < k; ++j) g.insert_or_assign(BatchKind(batch_pool()[b(rng)]), BatchLevel(level(rng)));
    for (const auto& [batch, lvl] : g) r.grants.push_back({batch, lvl});
    p.rules.push_back(std::move(r));
  }
  return p;
}

}  // namespace ppco::oracle

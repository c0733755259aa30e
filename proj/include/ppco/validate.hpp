#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ppco/model.hpp"

namespace ppco {

struct Violation {
  std::string code;     // stable, machine-readable, e.g. "decomposition.cycle"
  std::string subject;  // id of the offending entity
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }

  std::vector<std::string> codes() const {
    std::vector<std::string> out;
    for (const auto& v : violations) out.push_back(v.code);
    return out;
  }
};

namespace detail {

class ModelValidator {
 public:
  ModelValidator(const PpcoModel& m, const std::set<ActorId>* actors) : m_(m), actors_(actors) {}

  ValidationReport run() {
    check_decomposition();
    check_interactions();
    check_process();
    check_organization();
    std::ranges::sort(report_.violations);
    return std::move(report_);
  }

 private:
  void add(std::string code, std::string subject, std::string message) {
    report_.violations.push_back({std::move(code), std::move(subject), std::move(message)});
  }

  template <typename Range>
  void check_unique(const Range& range, const std::string& code) {
    std::map<std::string, int> seen;
    for (const auto& e : range) ++seen[e.id.str()];
    for (const auto& [id, n] : seen) {
      if (n > 1) add(code, id, "id '" + id + "' used " + std::to_string(n) + " times");
    }
  }

  void check_decomposition() {
    check_unique(m_.artifacts, "artifact.duplicate_id");
    std::map<ArtifactId, const Artifact*> by_id;
    for (const auto& a : m_.artifacts) by_id.emplace(a.id, &a);

    std::vector<std::string> roots;
    for (const auto& a : m_.artifacts) {
      if (!a.parent_id) {
        roots.push_back(a.id.str());
      } else if (!by_id.contains(*a.parent_id)) {
        add("decomposition.dangling_parent", a.id.str(),
            "parent '" + a.parent_id->str() + "' does not exist");
      }
    }
    if (roots.empty()) {
      add("decomposition.no_root", m_.project_id, "no artifact without a parent");
    } else if (roots.size() > 1) {
      std::string list;
      for (const auto& r : roots) list += (list.empty() ? "" : ", ") + r;
      add("decomposition.multiple_roots", roots.front(), "several roots: " + list);
    }

    // Parent-chain walk with three-colour marking; each cycle reported once,
    // keyed by its smallest member.
    enum class Mark { White, Grey, Black };
    std::map<ArtifactId, Mark> mark;
    for (const auto& [id, _] : by_id) mark[id] = Mark::White;
    for (const auto& [start, _] : by_id) {
      std::vector<ArtifactId> path;
      ArtifactId cur = start;
      while (true) {
        auto it = mark.find(cur);
        if (it == mark.end() || it->second == Mark::Black) break;
        if (it->second == Mark::Grey) {
          auto from = std::ranges::find(path, cur);
          ArtifactId smallest = *std::min_element(from, path.end());
          std::string members;
          for (auto p = from; p != path.end(); ++p) members += (members.empty() ? "" : " -> ") + p->str();
          add("decomposition.cycle", smallest.str(), "parent links form a cycle: " + members);
          break;
        }
        it->second = Mark::Grey;
        path.push_back(cur);
        const Artifact* a = by_id.at(cur);
        if (!a->parent_id) break;
        cur = *a->parent_id;
      }
      for (const auto& p : path) mark[p] = Mark::Black;
    }

    auto root = by_id.find(m_.root_artifact_id);
    if (root == by_id.end()) {
      add("model.unknown_root", m_.root_artifact_id.str(), "root_artifact_id does not resolve");
    } else if (root->second->parent_id) {
      add("model.root_mismatch", m_.root_artifact_id.str(), "root_artifact_id names an artifact with a parent");
    }
  }

  void check_interactions() {
    check_unique(m_.interactions, "interaction.duplicate_id");
    for (const auto& i : m_.interactions) {
      bool a_ok = find_artifact(m_, i.endpoint_a) != nullptr;
      bool b_ok = find_artifact(m_, i.endpoint_b) != nullptr;
      if (!a_ok || !b_ok) {
        add("interaction.dangling_endpoint", i.id.str(),
            "endpoint '" + (a_ok ? i.endpoint_b : i.endpoint_a).str() + "' does not exist");
      } else if (i.endpoint_a == i.endpoint_b) {
        add("interaction.self_loop", i.id.str(), "both endpoints are '" + i.endpoint_a.str() + "'");
      }
    }
  }

  void check_process() {
    check_unique(m_.processes, "process.duplicate_id");
    check_unique(m_.activities, "activity.duplicate_id");
    check_unique(m_.tasks, "task.duplicate_id");

    std::set<ActivityId> mismatched;
    for (const auto& p : m_.processes) {
      for (const auto& aid : p.activity_ids) {
        const Activity* act = find_activity(m_, aid);
        if (act == nullptr) {
          add("process.dangling_activity", p.id.str(), "activity '" + aid.str() + "' does not exist");
        } else if (act->process_id != p.id && find_by_id(m_.processes, act->process_id) != nullptr) {
          mismatched.insert(aid);
        }
      }
    }
    for (const auto& act : m_.activities) {
      const Process* p = find_by_id(m_.processes, act.process_id);
      if (p == nullptr) {
        add("activity.dangling_process", act.id.str(), "process '" + act.process_id.str() + "' does not exist");
      } else if (std::ranges::find(p->activity_ids, act.id) == p->activity_ids.end()) {
        mismatched.insert(act.id);
      }
    }
    for (const auto& aid : mismatched) {
      add("process.activity_mismatch", aid.str(), "activity is not owned by exactly the process it names");
    }

    for (const auto& t : m_.tasks) {
      if (find_activity(m_, t.activity_id) == nullptr) {
        add("task.dangling_activity", t.id.str(), "activity '" + t.activity_id.str() + "' does not exist");
      }
    }
    for (const auto& f : m_.task_flows) {
      std::string subject = f.from_task.str() + "->" + f.to_task.str();
      bool from_ok = find_by_id(m_.tasks, f.from_task) != nullptr;
      bool to_ok = find_by_id(m_.tasks, f.to_task) != nullptr;
      if (!from_ok || !to_ok) {
        add("taskflow.dangling_endpoint", subject, "flow endpoint does not exist");
      } else if (f.from_task == f.to_task) {
        add("taskflow.self_loop", subject, "flow from a task to itself");
      }
    }
  }

  void check_organization() {
    const auto& org = m_.organization;
    check_unique(org.teams, "organization.duplicate_team");
    for (const auto& t : org.teams) {
      if (find_artifact(m_, t.responsibility_artifact_id) == nullptr) {
        add("organization.dangling_responsibility", t.id.str(),
            "artifact '" + t.responsibility_artifact_id.str() + "' does not exist");
      }
      if (actors_ != nullptr) {
        for (const auto& member : t.member_actor_ids) {
          if (!actors_->contains(member)) {
            add("organization.unknown_member", t.id.str(), "actor '" + member.str() + "' is not registered");
          }
        }
      }
    }

    std::set<TeamId> reported_unknown;
    auto known = [&](const TeamId& id) {
      if (find_team(m_, id) != nullptr) return true;
      if (reported_unknown.insert(id).second) {
        add("organization.unknown_team", id.str(), "matrix references unknown team");
      }
      return false;
    };
    auto cell = [&](const TeamId& a, const TeamId& b) -> std::int64_t {
      auto row = org.collaboration_matrix.find(a);
      if (row == org.collaboration_matrix.end()) return 0;
      auto it = row->second.find(b);
      return it == row->second.end() ? 0 : it->second;
    };
    for (const auto& [a, row] : org.collaboration_matrix) {
      bool a_known = known(a);
      for (const auto& [b, freq] : row) {
        bool b_known = known(b);
        if (!a_known || !b_known) continue;
        if (freq < 0) {
          add("organization.negative_frequency", a.str() + "/" + b.str(), "frequency is negative");
        }
        if (a == b && freq != 0) {
          add("organization.nonzero_diagonal", a.str(), "diagonal cell is " + std::to_string(freq));
        }
      }
    }
    for (std::size_t i = 0; i < org.teams.size(); ++i) {
      for (std::size_t j = i + 1; j < org.teams.size(); ++j) {
        const auto& a = org.teams[i].id;
        const auto& b = org.teams[j].id;
        if (cell(a, b) != cell(b, a)) {
          add("organization.asymmetric_matrix", std::min(a, b).str() + "/" + std::max(a, b).str(),
              std::to_string(cell(a, b)) + " != " + std::to_string(cell(b, a)));
        }
      }
    }
  }

  const PpcoModel& m_;
  const std::set<ActorId>* actors_;
  ValidationReport report_;
};

}  // namespace detail

/// Every invariant violation of `m`, sorted by (code, subject). Member actor
/// ids are checked only when a registry is supplied.
inline ValidationReport validate_model(const PpcoModel& m) {
  return detail::ModelValidator(m, nullptr).run();
}

inline ValidationReport validate_model(const PpcoModel& m, const std::set<ActorId>& registered_actors) {
  return detail::ModelValidator(m, &registered_actors).run();
}

}  // namespace ppco

namespace ppco {

// Thrown when a document is rejected because of invariant violations.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report)
      : Error(ErrorCode::ValidationFailed, summarize(report)), report_(std::move(report)) {}

  const ValidationReport& report() const noexcept { return report_; }

 private:
  static std::string summarize(const ValidationReport& r) {
    std::string s = "validation failed:";
    for (const auto& v : r.violations) s += " " + v.code + "(" + v.subject + ")";
    return s;
  }

  ValidationReport report_;
};

}  // namespace ppco

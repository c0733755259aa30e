#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppco/bounded.hpp"
#include "ppco/error.hpp"
#include "ppco/ids.hpp"
#include "ppco/viewpoint.hpp"

namespace ppco {

// ---------------------------------------------------------------------------
// Leveled batch lists

struct ConnexionEntry {
  BatchKind batch;
  BatchLevel level;
  std::set<ViewpointId> provenance;

  friend bool operator==(const ConnexionEntry&, const ConnexionEntry&) = default;
};

/// Entries sorted by batch name, each batch at most once.
using ConnexionLevelList = std::vector<ConnexionEntry>;

inline bool is_well_formed(const ConnexionLevelList& list) {
  for (std::size_t i = 1; i < list.size(); ++i) {
    if (!(list[i - 1].batch < list[i].batch)) return false;
  }
  return true;
}

inline const ConnexionEntry* find_batch(const ConnexionLevelList& list, const BatchKind& batch) {
  auto it = std::ranges::lower_bound(list, batch, {}, &ConnexionEntry::batch);
  return it != list.end() && it->batch == batch ? &*it : nullptr;
}

// ---------------------------------------------------------------------------
// Policy

struct TagPattern {
  std::optional<std::string> tag;  // nullopt is the wildcard '*'

  bool matches(std::string_view s) const { return !tag || *tag == s; }
  std::string text() const { return tag ? *tag : "*"; }

  friend bool operator==(const TagPattern&, const TagPattern&) = default;
};

struct Grant {
  BatchKind batch;
  BatchLevel level;

  friend bool operator==(const Grant&, const Grant&) = default;
};

struct PolicyRule {
  TagPattern discipline;
  TagPattern activity;  // matched against the viewpoint's activity id
  CompetenceLevel min_competence;
  std::vector<Grant> grants;  // sorted by batch, non-empty, no duplicates

  bool matches(const Viewpoint& vp, CompetenceLevel competence) const {
    return discipline.matches(vp.domain.discipline) && activity.matches(vp.domain.activity_id.str()) &&
           competence >= min_competence;
  }

  friend bool operator==(const PolicyRule&, const PolicyRule&) = default;
};

struct Policy {
  std::vector<PolicyRule> rules;

  friend bool operator==(const Policy&, const Policy&) = default;
};

enum class PolicyErrorKind { Syntax, Semantic };

class PolicyError : public Error {
 public:
  PolicyError(PolicyErrorKind kind, std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError, format(kind, line, column, what)),
        kind_(kind), line_(line), column_(column) {}

  PolicyErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(PolicyErrorKind kind, std::size_t line, std::size_t column, const std::string& what) {
    return std::string(kind == PolicyErrorKind::Syntax ? "syntax" : "semantic") + " error at " +
           std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  PolicyErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

// Line-oriented parser for
//
//   rule discipline=<tag|*> activity=<tag|*> competence>=<n>
//     grant <Batch>:<level>
//
// Blank lines and lines starting with '#' are ignored. Columns are 1-based.
class PolicyParser {
 public:
  explicit PolicyParser(std::string_view text) : text_(text) {}

  Policy parse() {
    Policy policy;
    std::size_t rule_line = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      line_ = line;
      col_ = 0;
      skip_spaces();
      bool indented = col_ > 0;
      if (!at_end() && peek() != '#') {
        if (indented) {
          if (policy.rules.empty()) error(PolicyErrorKind::Syntax, "grant outside of a rule");
          parse_grant(policy.rules.back());
        } else {
          if (!policy.rules.empty()) finish_rule(policy.rules.back(), rule_line);
          policy.rules.push_back(parse_rule_header());
          rule_line = line_no_;
        }
      }
      if (end == text_.size()) break;
      pos = end + 1;
    }
    if (!policy.rules.empty()) finish_rule(policy.rules.back(), rule_line);
    return policy;
  }

 private:
  [[noreturn]] void error(PolicyErrorKind kind, const std::string& what) const {
    throw PolicyError(kind, line_no_, col_ + 1, what);
  }

  bool at_end() const { return col_ >= line_.size(); }
  char peek() const { return line_[col_]; }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++col_;
  }

  void expect_literal(std::string_view lit) {
    if (line_.substr(col_, lit.size()) != lit) error(PolicyErrorKind::Syntax, "expected '" + std::string(lit) + "'");
    col_ += lit.size();
  }

  std::string name() {
    std::size_t start = col_;
    while (!at_end() && is_name_char(peek())) ++col_;
    if (col_ == start) error(PolicyErrorKind::Syntax, "expected a name");
    return std::string(line_.substr(start, col_ - start));
  }

  TagPattern pattern() {
    if (!at_end() && peek() == '*') {
      ++col_;
      return {};
    }
    return {name()};
  }

  // Returns the value and leaves col_ at its first digit for error reports.
  int integer(std::size_t& start) {
    start = col_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++col_;
    if (col_ == start) error(PolicyErrorKind::Syntax, "expected an integer");
    if (col_ - start > 9) {
      col_ = start;
      error(PolicyErrorKind::Semantic, "integer too large");
    }
    return std::stoi(std::string(line_.substr(start, col_ - start)));
  }

  void expect_separator() {
    if (at_end()) return;
    if (peek() != ' ' && peek() != '\t') error(PolicyErrorKind::Syntax, "unexpected character");
    skip_spaces();
  }

  void expect_eol() {
    skip_spaces();
    if (!at_end() && peek() != '#') error(PolicyErrorKind::Syntax, "unexpected trailing text");
  }

  PolicyRule parse_rule_header() {
    expect_literal("rule");
    if (at_end() || (peek() != ' ' && peek() != '\t')) error(PolicyErrorKind::Syntax, "expected ' ' after 'rule'");
    skip_spaces();
    std::optional<TagPattern> discipline, activity;
    std::optional<CompetenceLevel> competence;
    while (!at_end() && peek() != '#') {
      std::size_t key_col = col_;
      std::string key = name();
      if (key == "discipline" || key == "activity") {
        auto& slot = key == "discipline" ? discipline : activity;
        if (slot) {
          col_ = key_col;
          error(PolicyErrorKind::Syntax, "duplicate field '" + key + "'");
        }
        expect_literal("=");
        slot = pattern();
      } else if (key == "competence") {
        if (competence) {
          col_ = key_col;
          error(PolicyErrorKind::Syntax, "duplicate field 'competence'");
        }
        expect_literal(">=");
        std::size_t start = 0;
        int n = integer(start);
        if (n < CompetenceLevel::min || n > CompetenceLevel::max) {
          col_ = start;
          error(PolicyErrorKind::Semantic, "competence must be in [1, 5]");
        }
        competence = CompetenceLevel(n);
      } else {
        col_ = key_col;
        error(PolicyErrorKind::Syntax, "unknown field '" + key + "'");
      }
      expect_separator();
    }
    col_ = 0;
    if (!discipline) error(PolicyErrorKind::Syntax, "rule is missing 'discipline='");
    if (!activity) error(PolicyErrorKind::Syntax, "rule is missing 'activity='");
    if (!competence) error(PolicyErrorKind::Syntax, "rule is missing 'competence>='");
    return PolicyRule{*discipline, *activity, *competence, {}};
  }

  void parse_grant(PolicyRule& rule) {
    expect_literal("grant");
    if (at_end() || (peek() != ' ' && peek() != '\t')) error(PolicyErrorKind::Syntax, "expected ' ' after 'grant'");
    skip_spaces();
    std::size_t batch_col = col_;
    BatchKind batch{name()};
    expect_literal(":");
    std::size_t start = 0;
    int level = integer(start);
    expect_eol();
    if (level < 1) {
      col_ = start;
      error(PolicyErrorKind::Semantic, "batch level must be >= 1");
    }
    for (const auto& g : rule.grants) {
      if (g.batch == batch) {
        col_ = batch_col;
        error(PolicyErrorKind::Semantic, "batch '" + batch.str() + "' granted twice in one rule");
      }
    }
    rule.grants.push_back({std::move(batch), BatchLevel(level)});
  }

  void finish_rule(PolicyRule& rule, std::size_t rule_line) {
    if (rule.grants.empty()) throw PolicyError(PolicyErrorKind::Semantic, rule_line, 1, "rule has no grants");
    std::ranges::sort(rule.grants, {}, &Grant::batch);
  }

  std::string_view text_;
  std::string_view line_;
  std::size_t line_no_ = 0;
  std::size_t col_ = 0;
};

}  // namespace detail

/// Throws PolicyError (ErrorCode::ParseError) carrying line and column.
inline Policy parse_policy(std::string_view document) {
  return detail::PolicyParser(document).parse();
}

/// Canonical text: rules in order, grants by batch name, one blank line
/// between rules.
inline std::string serialize_policy(const Policy& policy) {
  std::ostringstream out;
  bool first = true;
  for (const auto& rule : policy.rules) {
    if (!first) out << '\n';
    first = false;
    out << "rule discipline=" << rule.discipline.text() << " activity=" << rule.activity.text()
        << " competence>=" << rule.min_competence.value() << '\n';
    std::vector<Grant> grants = rule.grants;
    std::ranges::sort(grants, {}, &Grant::batch);
    for (const auto& g : grants) out << "  grant " << g.batch << ':' << g.level.value() << '\n';
  }
  return out.str();
}

/// Step 4: every rule matching the viewpoint's discipline, activity and the
/// actor's competence contributes its grants; the lowest level per batch wins.
inline ConnexionLevelList restitution_list_connexion_level(const Viewpoint& viewpoint, const Actor& actor,
                                                           const Policy& policy) {
  auto competence = actor.competence_in(viewpoint.domain.discipline);
  if (!competence) {
    fail(ErrorCode::InvalidInput, "actor '" + actor.id.str() + "' has no competence in '" +
                                      viewpoint.domain.discipline + "' (viewpoint '" + viewpoint.id.str() + "')");
  }
  std::map<BatchKind, BatchLevel> best;
  for (const auto& rule : policy.rules) {
    if (!rule.matches(viewpoint, *competence)) continue;
    for (const auto& g : rule.grants) {
      auto [it, inserted] = best.emplace(g.batch, g.level);
      if (!inserted) it->second = std::min(it->second, g.level);
    }
  }
  ConnexionLevelList out;
  out.reserve(best.size());
  for (const auto& [batch, level] : best) out.push_back({batch, level, {viewpoint.id}});
  return out;
}

}  // namespace ppco

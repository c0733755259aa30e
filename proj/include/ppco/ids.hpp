#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace ppco {

// Tagged string identifier so an ActorId cannot be passed where an
// ArtifactId is expected.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}
  explicit StrongId(std::string_view value) : value_(value) {}
  explicit StrongId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

namespace tag {
struct Artifact {};
struct Interaction {};
struct Process {};
struct Activity {};
struct Task {};
struct Team {};
struct Actor {};
struct Viewpoint {};
struct Change {};
struct Batch {};
}  // namespace tag

using ArtifactId = StrongId<tag::Artifact>;
using InteractionId = StrongId<tag::Interaction>;
using ProcessId = StrongId<tag::Process>;
using ActivityId = StrongId<tag::Activity>;
using TaskId = StrongId<tag::Task>;
using TeamId = StrongId<tag::Team>;
using ActorId = StrongId<tag::Actor>;
using ViewpointId = StrongId<tag::Viewpoint>;
using ChangeId = StrongId<tag::Change>;
// Batch catalog is open: any non-empty, case-sensitive name.
using BatchKind = StrongId<tag::Batch>;

// Disciplines are free tags ("geometry", "mechanic"); kept as plain strings.
using Discipline = std::string;

}  // namespace ppco

template <typename Tag>
struct std::hash<ppco::StrongId<Tag>> {
  std::size_t operator()(const ppco::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

#pragma once

#include <compare>
#include <limits>
#include <string>

#include "ppco/error.hpp"

namespace ppco {

// Integer constrained to [Min, Max]; construction outside the range throws
// InvalidInput.
template <typename Tag, int Min, int Max = std::numeric_limits<int>::max()>
class BoundedInt {
  static_assert(Min <= Max);

 public:
  static constexpr int min = Min;
  static constexpr int max = Max;

  constexpr BoundedInt() : value_(Min) {}
  constexpr explicit BoundedInt(int value) : value_(value) {
    if (value < Min || value > Max) {
      fail(ErrorCode::InvalidInput,
           std::string(Tag::name) + " " + std::to_string(value) +
               " outside [" + std::to_string(Min) + ", " +
               (Max == std::numeric_limits<int>::max() ? std::string("inf")
                                                       : std::to_string(Max)) +
               "]");
    }
  }

  constexpr int value() const noexcept { return value_; }

  friend constexpr auto operator<=>(BoundedInt, BoundedInt) = default;
  friend constexpr bool operator==(BoundedInt, BoundedInt) = default;

 private:
  int value_;
};

namespace tag {
struct Competence { static constexpr const char* name = "competence level"; };
struct Importance { static constexpr const char* name = "importance"; };
struct Level { static constexpr const char* name = "batch level"; };
}  // namespace tag

/// Actor expertise in one discipline; 5 = expert.
using CompetenceLevel = BoundedInt<tag::Competence, 1, 5>;
using Importance = BoundedInt<tag::Importance, 1, 5>;
/// Depth of access to a batch. 1 is the fullest ("All information").
using BatchLevel = BoundedInt<tag::Level, 1>;

}  // namespace ppco

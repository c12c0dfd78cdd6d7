/// @file impact.hpp
/// Weighted impact scoring over the safety, operational, financial and
/// privacy objectives, with exact rational arithmetic.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tara::impact {

// Compare only Rational against Rational: with C++20 rewritten comparisons,
// Boost 1.74's mixed rational/integer operator== recurses forever.
using Rational = boost::rational<std::int64_t>;

enum class Level { None, Low, Medium, High };

/// Logarithmic value of a level: 0, 1, 10, 100.
std::int64_t numeric(Level level);

enum class Objective { Safety, Operational, Financial, Privacy };

inline constexpr Objective kObjectives[] = {Objective::Safety, Objective::Operational,
                                            Objective::Financial, Objective::Privacy};

struct ImpactVector {
  Level safety = Level::None;
  Level operational = Level::None;
  Level financial = Level::None;
  Level privacy = Level::None;

  bool operator==(const ImpactVector&) const = default;

  Level get(Objective o) const;
  void set(Objective o, Level level);
};

struct ImpactOverrides {
  std::optional<Level> safety;
  std::optional<Level> operational;
  std::optional<Level> financial;
  std::optional<Level> privacy;

  bool operator==(const ImpactOverrides&) const = default;

  bool empty() const { return !safety && !operational && !financial && !privacy; }
  ImpactVector applied_to(ImpactVector v) const;
};

/// Per-objective weights; all strictly positive.
class Weights {
 public:
  /// Safety-dominant default: (10, 1, 1, 1).
  Weights();
  Weights(Rational safety, Rational operational, Rational financial, Rational privacy);

  const Rational& get(Objective o) const;
  Rational total() const { return safety_ + operational_ + financial_ + privacy_; }

  bool operator==(const Weights&) const = default;

 private:
  Rational safety_;
  Rational operational_;
  Rational financial_;
  Rational privacy_;
};

struct ImpactScore {
  Rational raw;    // weighted sum
  Rational value;  // raw / (100 * sum of weights), in [0, 1]

  bool operator==(const ImpactScore&) const = default;

  /// Four-decimal rendering, rounded half-up: 10/1300 -> "0.0077".
  std::string str() const;
};

enum class Rating { None, Low, Medium, High, Critical };

ImpactScore impact_score(const ImpactVector& v, const Weights& w = Weights{});

/// Thresholds 0.01 / 0.05 / 0.45; exactly 0 is None and exactly 1 is Critical.
Rating impact_rating(const ImpactScore& s);

/// Analyst-facing definition of an impact level for one objective.
std::string_view describe_level(Objective objective, Level level);

/// Fixed-point decimal rendering of a non-negative rational, half-up.
std::string format_decimal(const Rational& r, int places);

std::string_view to_string(Level level);
std::string_view to_string(Objective objective);
std::string_view to_string(Rating rating);
Level level_from_string(std::string_view s);
Objective objective_from_string(std::string_view s);
Rating rating_from_string(std::string_view s);

}  // namespace tara::impact

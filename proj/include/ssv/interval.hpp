#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssv/core.hpp"

namespace ssv {

/// A finite union of closed real intervals, kept sorted and strictly
/// disjoint (hi_i < lo_{i+1}). Construction merges overlapping or touching
/// pieces. The complement is never materialized; it is queried through
/// negated membership.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  IntervalUnion(double lo, double hi);
  explicit IntervalUnion(std::vector<std::pair<double, double>> intervals);

  bool contains(double x) const;
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  const std::vector<std::pair<double, double>>& intervals() const {
    return intervals_;
  }

  /// Smallest closed interval containing the union; undefined when empty.
  double lo() const { return intervals_.front().first; }
  double hi() const { return intervals_.back().second; }

  /// max(|lo|, |hi|); 0 for the empty union.
  double abs_bound() const;

  IntervalUnion shifted(double offset) const;

  /// Serialization used across the repo: "lo1:hi1,lo2:hi2,...".
  std::string to_string() const;
  static IntervalUnion parse(const std::string& text);

  bool operator==(const IntervalUnion& other) const {
    return intervals_ == other.intervals_;
  }

 private:
  std::vector<std::pair<double, double>> intervals_;
};

/// Distance between two interval unions as subsets of R (0 if they touch).
double set_distance(const IntervalUnion& a, const IntervalUnion& b);

}  // namespace ssv

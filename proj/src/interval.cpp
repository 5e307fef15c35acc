#include "ssv/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ssv {

IntervalUnion::IntervalUnion(double lo, double hi) {
  if (!(lo <= hi)) throw ArgumentError("interval requires lo <= hi");
  intervals_.emplace_back(lo, hi);
}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> intervals) {
  for (const auto& [lo, hi] : intervals) {
    if (!(lo <= hi)) throw ArgumentError("interval requires lo <= hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw ArgumentError("interval endpoints must be finite");
  }
  std::sort(intervals.begin(), intervals.end());
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.first <= intervals_.back().second) {
      intervals_.back().second = std::max(intervals_.back().second, iv.second);
    } else {
      intervals_.push_back(iv);
    }
  }
}

bool IntervalUnion::contains(double x) const {
  // first interval with hi >= x
  auto it = std::lower_bound(
      intervals_.begin(), intervals_.end(), x,
      [](const std::pair<double, double>& iv, double v) { return iv.second < v; });
  return it != intervals_.end() && it->first <= x;
}

double IntervalUnion::abs_bound() const {
  if (intervals_.empty()) return 0.0;
  return std::max(std::abs(lo()), std::abs(hi()));
}

IntervalUnion IntervalUnion::shifted(double offset) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(intervals_.size());
  for (const auto& [lo, hi] : intervals_) out.emplace_back(lo + offset, hi + offset);
  return IntervalUnion(std::move(out));
}

std::string IntervalUnion::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (k) os << ',';
    os << intervals_[k].first << ':' << intervals_[k].second;
  }
  return os.str();
}

IntervalUnion IntervalUnion::parse(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::istringstream is(text);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    auto colon = piece.find(':');
    if (colon == std::string::npos)
      throw ArgumentError("interval piece '" + piece + "' is not lo:hi");
    std::size_t pos_lo = 0, pos_hi = 0;
    double lo = std::stod(piece.substr(0, colon), &pos_lo);
    double hi = std::stod(piece.substr(colon + 1), &pos_hi);
    out.emplace_back(lo, hi);
  }
  if (out.empty()) throw ArgumentError("empty interval union text");
  return IntervalUnion(std::move(out));
}

double set_distance(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.empty() || b.empty()) throw ArgumentError("set_distance of empty union");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [alo, ahi] : a.intervals()) {
    for (const auto& [blo, bhi] : b.intervals()) {
      double gap = std::max({blo - ahi, alo - bhi, 0.0});
      best = std::min(best, gap);
    }
  }
  return best;
}

}  // namespace ssv

#include "horseshoe/circle.hpp"

#include <algorithm>

namespace horseshoe {

bool pairwise_disjoint(const std::vector<CircleInterval>& ivs) {
  const std::size_t n = ivs.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Overlap iff the left endpoint of one lies strictly inside the other.
      double di = wrap01(ivs[j].left - ivs[i].left);
      double dj = wrap01(ivs[i].left - ivs[j].left);
      bool j_in_i = di < ivs[i].length() - 1e-15;
      bool i_in_j = dj < ivs[j].length() - 1e-15;
      if (j_in_i || i_in_j) return false;
    }
  }
  return true;
}

double largest_gap(const std::vector<CircleInterval>& ivs) {
  if (ivs.empty()) return 1.0;
  std::vector<std::pair<double, double>> arcs;  // (start, length) reduced
  arcs.reserve(ivs.size());
  for (const auto& iv : ivs) {
    if (iv.length() >= 1.0) return 0.0;
    arcs.emplace_back(wrap01(iv.left), iv.length());
  }
  std::sort(arcs.begin(), arcs.end());
  // Merge overlapping arcs along the sorted order, then find the widest hole.
  std::vector<std::pair<double, double>> merged;  // (start, end) with end >= start, end < start+1
  for (auto [s, len] : arcs) {
    double e = s + len;
    if (!merged.empty() && s <= merged.back().second + 1e-15) {
      merged.back().second = std::max(merged.back().second, e);
    } else {
      merged.emplace_back(s, e);
    }
  }
  // Wraparound merge between the last arc and the first.
  if (merged.size() > 1 && merged.back().second >= merged.front().first + 1.0 - 1e-15) {
    merged.front().first = merged.back().first - 1.0;
    merged.front().second = std::max(merged.front().second, merged.back().second - 1.0);
    merged.pop_back();
  }
  if (merged.size() == 1 && merged.front().second - merged.front().first >= 1.0 - 1e-15) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double next_start = (i + 1 < merged.size()) ? merged[i + 1].first : merged.front().first + 1.0;
    worst = std::max(worst, next_start - merged[i].second);
  }
  return worst;
}

}  // namespace horseshoe

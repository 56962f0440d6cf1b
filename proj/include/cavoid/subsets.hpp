#pragma once

#include <algorithm>
#include <vector>

namespace cavoid {

// Sum of C(n, i) for i <= l, saturating just above `cap`.
inline long long binomial_sum(int n, int l, long long cap) {
  long long total = 0, term = 1;
  for (int i = 0; i <= std::min(n, l); ++i) {
    if (i > 0) term = term * (n - i + 1) / i;
    total += term;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Calls f(subset) for every subset of {0..n-1} of size <= l, by size then
// lexicographically, the empty subset first. Stops when f returns true.
template <class F>
bool for_each_subset(int n, int l, F&& f) {
  std::vector<int> idx;
  if (f(idx)) return true;
  for (int size = 1; size <= std::min(n, l); ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (f(idx)) return true;
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

}  // namespace cavoid

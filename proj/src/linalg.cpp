#include "gaugekit/linalg.hpp"

#include <algorithm>

namespace gaugekit {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> c(k);
  for (int i = 0; i < k; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

int combination_rank(const std::vector<int>& combo, int n) {
  // Lexicographic rank among all C(n,k) sorted tuples.
  auto binom = [](int a, int b) -> long {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
    return r;
  };
  const int k = static_cast<int>(combo.size());
  long rank = 0;
  int prev = -1;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < combo[i]; ++v) rank += binom(n - 1 - v, k - 1 - i);
    prev = combo[i];
  }
  return static_cast<int>(rank);
}

int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  const int k = static_cast<int>(idx.size());
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (idx[j] < idx[i]) {
        std::swap(idx[i], idx[j]);
        sign = -sign;
      } else if (idx[j] == idx[i]) {
        return 0;
      }
    }
  }
  return sign;
}

int permutation_sign(const std::vector<int>& perm) {
  std::vector<int> p = perm;
  int sign = sort_sign(p);
  if (sign == 0) return 0;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return 0;
  return sign;
}

double condition_number(const Mat& m) {
  auto sv = m.jacobiSvd().singularValues();
  double smin = sv(sv.size() - 1);
  if (smin <= 0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace gaugekit

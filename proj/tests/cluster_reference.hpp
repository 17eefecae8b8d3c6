// Test-side clustering oracle: exhaustive enumeration of all assignments of p
// points to at most k clusters, scoring each by the k-means objective with
// mean centroids. Only tractable for tiny p.
#pragma once

#include <vector>

namespace cluster_reference {

struct BestPartition {
  double inertia = 0.0;
  std::vector<int> labels;
};

inline double partition_inertia(const std::vector<double>& pts, int p, int d,
                                const std::vector<int>& labels, int k) {
  std::vector<std::vector<double>> mean(k, std::vector<double>(d, 0.0));
  std::vector<int> count(k, 0);
  for (int i = 0; i < p; ++i) {
    ++count[labels[i]];
    for (int j = 0; j < d; ++j) mean[labels[i]][j] += pts[static_cast<size_t>(i) * d + j];
  }
  for (int c = 0; c < k; ++c)
    if (count[c])
      for (int j = 0; j < d; ++j) mean[c][j] /= count[c];
  double s = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < d; ++j) {
      double diff = pts[static_cast<size_t>(i) * d + j] - mean[labels[i]][j];
      s += diff * diff;
    }
  return s;
}

inline BestPartition brute_force(const std::vector<double>& pts, int p, int d, int k) {
  BestPartition best;
  std::vector<int> labels(p, 0);
  bool have = false;
  // restricted growth strings enumerate set partitions into <= k blocks
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == p) {
      if (used != k) return;  // exactly k non-empty clusters
      double inertia = partition_inertia(pts, p, d, labels, k);
      if (!have || inertia < best.inertia) {
        best.inertia = inertia;
        best.labels = labels;
        have = true;
      }
      return;
    }
    for (int c = 0; c <= used && c < k; ++c) {
      labels[i] = c;
      self(self, i + 1, c == used ? used + 1 : used);
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace cluster_reference

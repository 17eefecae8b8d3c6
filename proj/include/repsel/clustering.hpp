#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace repsel::cluster {

struct ClusterResult {
  int k = 0;
  std::vector<int> labels;                     // length p, values in [0, k)
  std::vector<std::vector<double>> centroids;  // k x d
  std::vector<int> medoid_indices;             // k point indices
  std::vector<int> weights;                    // k cluster sizes, sum = p
  double inertia = 0.0;                        // sum of squared distances to centroids
};

/// Lloyd iterations with k-means++ seeding per restart, squared-Euclidean
/// distance, empty-cluster repair by splitting off the farthest point, and
/// best-inertia selection over restarts (ties by restart index). Cluster ids
/// are canonicalized by first-member order, so permuting equal points only
/// permutes labels consistently. Deterministic given (seed, restarts).
ClusterResult kmeans(const std::vector<double>& points, int p, int d, int k, int restarts,
                     uint64_t seed);

/// Per cluster, the member nearest its centroid; ties resolve to the lowest
/// point index.
std::vector<int> medoids(const std::vector<double>& points, int p, int d,
                         const ClusterResult& result);

/// Cluster cardinalities in cluster-id order.
std::vector<int> weights(const ClusterResult& result);

double inertia_of(const std::vector<double>& points, int p, int d,
                  const std::vector<int>& labels,
                  const std::vector<std::vector<double>>& centroids);

std::string to_json(const ClusterResult& result, const std::string& config_hash);
ClusterResult from_json(const std::string& text);

}  // namespace repsel::cluster

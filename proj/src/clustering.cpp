#include "repsel/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "repsel/common.hpp"
#include "repsel/rng.hpp"

using nlohmann::json;

namespace repsel::cluster {

namespace {

double sqdist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) {
    double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

struct Run {
  std::vector<int> labels;
  std::vector<std::vector<double>> centroids;
  double inertia = 0.0;
};

Run lloyd(const std::vector<double>& pts, int p, int d, int k, Rng rng) {
  auto point = [&](int i) { return pts.data() + static_cast<size_t>(i) * d; };

  // k-means++ seeding
  std::vector<std::vector<double>> cent;
  cent.reserve(k);
  std::vector<double> min_d2(p, std::numeric_limits<double>::infinity());
  int first = rng.uniform_int(p);
  cent.emplace_back(point(first), point(first) + d);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (int i = 0; i < p; ++i) {
      min_d2[i] = std::min(min_d2[i], sqdist(point(i), cent.back().data(), d));
      total += min_d2[i];
    }
    int chosen = -1;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      double acc = 0.0;
      for (int i = 0; i < p; ++i) {
        acc += min_d2[i];
        if (acc >= target) {
          chosen = i;
          break;
        }
      }
    }
    if (chosen < 0) {
      // all remaining points coincide with a centroid; take the lowest one
      // that is not already a centroid itself
      for (int i = 0; i < p && chosen < 0; ++i) {
        bool used = false;
        for (const auto& cc : cent)
          if (sqdist(point(i), cc.data(), d) == 0.0) used = true;
        if (!used) chosen = i;
      }
      if (chosen < 0) chosen = c % p;
    }
    cent.emplace_back(point(chosen), point(chosen) + d);
  }

  std::vector<int> labels(p, -1);
  std::vector<int> counts(k, 0);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (int i = 0; i < p; ++i) {
      int best = 0;
      double best_d = sqdist(point(i), cent[0].data(), d);
      for (int c = 1; c < k; ++c) {
        double dist = sqdist(point(i), cent[c].data(), d);
        if (dist < best_d) {  // ties keep the lowest cluster id
          best_d = dist;
          best = c;
        }
      }
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < p; ++i) ++counts[labels[i]];

    // empty-cluster repair: split off the point farthest from its centroid
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < p; ++i) {
        if (counts[labels[i]] <= 1) continue;
        double dist = sqdist(point(i), cent[labels[i]].data(), d);
        if (dist > far_d) {
          far_d = dist;
          far = i;
        }
      }
      if (far < 0) break;
      --counts[labels[far]];
      labels[far] = c;
      counts[c] = 1;
      cent[c].assign(point(far), point(far) + d);
      changed = true;
    }

    for (int c = 0; c < k; ++c) std::fill(cent[c].begin(), cent[c].end(), 0.0);
    for (int i = 0; i < p; ++i) {
      const double* x = point(i);
      auto& cc = cent[labels[i]];
      for (int j = 0; j < d; ++j) cc[j] += x[j];
    }
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0)
        for (int j = 0; j < d; ++j) cent[c][j] /= counts[c];

    if (!changed) break;
  }

  Run run;
  run.labels = std::move(labels);
  run.centroids = std::move(cent);
  run.inertia = inertia_of(pts, p, d, run.labels, run.centroids);
  return run;
}

void canonicalize(Run& run, int k) {
  std::vector<int> remap(k, -1);
  int next = 0;
  for (int i = 0; i < static_cast<int>(run.labels.size()); ++i)
    if (remap[run.labels[i]] < 0) remap[run.labels[i]] = next++;
  std::vector<std::vector<double>> cent(k);
  for (int c = 0; c < k; ++c) cent[remap[c]] = std::move(run.centroids[c]);
  run.centroids = std::move(cent);
  for (auto& l : run.labels) l = remap[l];
}

}  // namespace

double inertia_of(const std::vector<double>& points, int p, int d,
                  const std::vector<int>& labels,
                  const std::vector<std::vector<double>>& centroids) {
  double s = 0.0;
  for (int i = 0; i < p; ++i)
    s += sqdist(points.data() + static_cast<size_t>(i) * d, centroids[labels[i]].data(), d);
  return s;
}

ClusterResult kmeans(const std::vector<double>& points, int p, int d, int k, int restarts,
                     uint64_t seed) {
  if (k < 1 || k > p)
    throw ConfigError("kmeans: k = " + std::to_string(k) + " outside [1, p = " +
                      std::to_string(p) + "]");
  if (restarts < 1) throw ConfigError("kmeans: restarts must be >= 1");
  if (static_cast<size_t>(p) * d != points.size()) throw ConfigError("kmeans: shape mismatch");

  Run best;
  bool have = false;
  for (int r = 0; r < restarts; ++r) {
    Run run = lloyd(points, p, d, k, Rng::derive(seed, r));
    if (!have || run.inertia < best.inertia) {
      best = std::move(run);
      have = true;
    }
  }
  canonicalize(best, k);

  ClusterResult res;
  res.k = k;
  res.labels = std::move(best.labels);
  res.centroids = std::move(best.centroids);
  res.inertia = best.inertia;
  res.weights.assign(k, 0);
  for (int l : res.labels) ++res.weights[l];
  res.medoid_indices = medoids(points, p, d, res);
  return res;
}

std::vector<int> medoids(const std::vector<double>& points, int p, int d,
                         const ClusterResult& result) {
  std::vector<int> med(result.k, -1);
  std::vector<double> best(result.k, std::numeric_limits<double>::infinity());
  for (int i = 0; i < p; ++i) {
    int c = result.labels[i];
    double dist = sqdist(points.data() + static_cast<size_t>(i) * d,
                         result.centroids[c].data(), d);
    if (dist < best[c]) {
      best[c] = dist;
      med[c] = i;
    }
  }
  for (int c = 0; c < result.k; ++c)
    if (med[c] < 0) throw ConfigError("medoids: cluster " + std::to_string(c) + " is empty");
  return med;
}

std::vector<int> weights(const ClusterResult& result) { return result.weights; }

std::string to_json(const ClusterResult& result, const std::string& config_hash) {
  json j;
  j["k"] = result.k;
  j["labels"] = result.labels;
  j["medoid_indices"] = result.medoid_indices;
  j["weights"] = result.weights;
  j["inertia"] = result.inertia;
  j["centroids"] = result.centroids;
  j["config"] = config_hash;
  return j.dump(2) + "\n";
}

ClusterResult from_json(const std::string& text) {
  json j = json::parse(text);
  ClusterResult r;
  r.k = j.at("k").get<int>();
  r.labels = j.at("labels").get<std::vector<int>>();
  r.medoid_indices = j.at("medoid_indices").get<std::vector<int>>();
  r.weights = j.at("weights").get<std::vector<int>>();
  r.inertia = j.at("inertia").get<double>();
  r.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
  return r;
}

}  // namespace repsel::cluster

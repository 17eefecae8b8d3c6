#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cluster_reference.hpp"
#include "repsel/clustering.hpp"
#include "repsel/rng.hpp"

using namespace repsel;
using namespace repsel::cluster;

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

// partition as set of sets, independent of label numbering
std::set<std::set<int>> as_partition(const std::vector<int>& labels, int k) {
  std::vector<std::set<int>> groups(k);
  for (size_t i = 0; i < labels.size(); ++i) groups[labels[i]].insert(static_cast<int>(i));
  std::set<std::set<int>> out;
  for (auto& g : groups)
    if (!g.empty()) out.insert(g);
  return out;
}

}  // namespace

TEST_CASE("two separated pairs on the line") {
  std::vector<double> pts = {0.0, 0.1, 10.0, 10.1};
  auto res = kmeans(pts, 4, 1, 2, 20, 7);
  CHECK(as_partition(res.labels, 2) == std::set<std::set<int>>{{0, 1}, {2, 3}});
  // canonical ids follow first-member order
  CHECK(res.labels == std::vector<int>{0, 0, 1, 1});
  CHECK(res.centroids[0][0] == doctest::Approx(0.05));
  CHECK(res.centroids[1][0] == doctest::Approx(10.05));
  CHECK(res.weights == std::vector<int>{2, 2});
  // |0-0.05| = |0.1-0.05|: the tie resolves to the lower index
  CHECK(res.medoid_indices[0] == 0);
}

TEST_CASE("k equals p: singletons with zero inertia") {
  std::vector<double> pts = {1.0, 5.0, 9.0};
  auto res = kmeans(pts, 3, 1, 3, 5, 3);
  CHECK(res.inertia == doctest::Approx(0.0));
  CHECK(res.weights == std::vector<int>{1, 1, 1});
  CHECK(res.labels == std::vector<int>{0, 1, 2});
  CHECK(res.medoid_indices == std::vector<int>{0, 1, 2});
}

TEST_CASE("k = 1 reduces to the mean") {
  std::vector<double> pts = {1.0, 2.0, 6.0};
  auto res = kmeans(pts, 3, 1, 1, 3, 11);
  CHECK(res.centroids[0][0] == doctest::Approx(3.0));
  double expected = (1 - 3.0) * (1 - 3.0) + (2 - 3.0) * (2 - 3.0) + (6 - 3.0) * (6 - 3.0);
  CHECK(res.inertia == doctest::Approx(expected));
}

TEST_CASE("matches brute force on random tiny instances") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    Rng rng(seed * 977);
    int p = 5 + rng.uniform_int(6);  // 5..10
    int d = 1 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(2);  // 2..3
    std::vector<double> pts(static_cast<size_t>(p) * d);
    for (auto& v : pts) v = rng.uniform(-5.0, 5.0);
    auto oracle = cluster_reference::brute_force(pts, p, d, k);
    auto res = kmeans(pts, p, d, k, 60, seed);
    CAPTURE(seed);
    CAPTURE(p);
    CHECK(res.inertia == doctest::Approx(oracle.inertia).epsilon(1e-9));
    CHECK(inertia_of(pts, p, d, res.labels, res.centroids) ==
          doctest::Approx(res.inertia).epsilon(1e-12));
  }
}

TEST_CASE("medoid of collinear cluster is the median-nearest point") {
  std::vector<double> pts = {0.0, 1.0, 2.0, 3.0, 10.0};
  auto res = kmeans(pts, 5, 1, 1, 3, 5);
  // centroid = 3.2; the nearest member is 3.0 at index 3
  int best = 0;
  double best_d = 1e300;
  for (int i = 0; i < 5; ++i) {
    double dd = (pts[i] - res.centroids[0][0]) * (pts[i] - res.centroids[0][0]);
    if (dd < best_d) {
      best_d = dd;
      best = i;
    }
  }
  CHECK(res.medoid_indices[0] == best);
  CHECK(res.medoid_indices[0] == 3);
}

TEST_CASE("weights count members and sum to p") {
  Rng rng(123);
  std::vector<double> pts(40);
  for (auto& v : pts) v = rng.uniform(0.0, 1.0);
  auto res = kmeans(pts, 40, 1, 5, 10, 9);
  int sum = 0;
  std::vector<int> manual(5, 0);
  for (int l : res.labels) ++manual[l];
  for (int c = 0; c < 5; ++c) {
    CHECK(res.weights[c] == manual[c]);
    sum += res.weights[c];
  }
  CHECK(sum == 40);
}

TEST_CASE("well-separated blobs are recovered for every seed") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Rng rng(seed);
    const int per = 6, k = 3, d = 2;
    std::vector<double> pts;
    std::vector<int> truth;
    for (int c = 0; c < k; ++c) {
      double cx = 100.0 * c, cy = -50.0 * c;
      for (int i = 0; i < per; ++i) {
        pts.push_back(cx + rng.uniform(-1.0, 1.0));
        pts.push_back(cy + rng.uniform(-1.0, 1.0));
        truth.push_back(c);
      }
    }
    auto res = kmeans(pts, per * k, d, k, 10, seed);
    CHECK(as_partition(res.labels, k) == as_partition(truth, k));
  }
}

TEST_CASE("best-over-restarts never loses to a single restart") {
  Rng rng(42);
  std::vector<double> pts(60);
  for (auto& v : pts) v = rng.uniform(0.0, 10.0);
  auto multi = kmeans(pts, 30, 2, 4, 25, 17);
  for (int r = 1; r <= 25; r += 6) {
    auto single = kmeans(pts, 30, 2, 4, r, 17);
    CHECK(multi.inertia <= single.inertia + 1e-12);
  }
}

TEST_CASE("deterministic and json round-trip") {
  Rng rng(5);
  std::vector<double> pts(24);
  for (auto& v : pts) v = rng.uniform(0.0, 1.0);
  auto a = kmeans(pts, 12, 2, 3, 10, 99);
  auto b = kmeans(pts, 12, 2, 3, 10, 99);
  CHECK(a.labels == b.labels);
  CHECK(a.inertia == b.inertia);
  auto text = to_json(a, "cafe");
  auto c = from_json(text);
  CHECK(c.labels == a.labels);
  CHECK(c.weights == a.weights);
  CHECK(c.inertia == a.inertia);
  CHECK(c.medoid_indices == a.medoid_indices);
}

TEST_CASE("input order only renames clusters") {
  std::vector<double> pts = {0.0, 0.2, 7.0, 7.3, 15.0, 15.1};
  auto base = kmeans(pts, 6, 1, 3, 30, 21);
  std::vector<double> rev(pts.rbegin(), pts.rend());
  auto flipped = kmeans(rev, 6, 1, 3, 30, 21);
  // compare partitions after undoing the reversal
  std::vector<int> unflipped(6);
  for (int i = 0; i < 6; ++i) unflipped[i] = flipped.labels[5 - i];
  CHECK(as_partition(base.labels, 3) == as_partition(unflipped, 3));
}

TEST_CASE("k out of range throws") {
  std::vector<double> pts = {1.0, 2.0};
  CHECK_THROWS(kmeans(pts, 2, 1, 3, 5, 1));
  CHECK_THROWS(kmeans(pts, 2, 1, 0, 5, 1));
}

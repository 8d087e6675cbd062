#include "dmdc/clustering.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace dmdc {

ConnectivityGraph ConnectivityGraph::complete(int n) {
  ConnectivityGraph g;
  g.node_count = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
  return g;
}

double ward_cost(int size_a, const Eigen::VectorXd& mean_a,
                 int size_b, const Eigen::VectorXd& mean_b) {
  const double sa = static_cast<double>(size_a);
  const double sb = static_cast<double>(size_b);
  return sa * sb / (sa + sb) * (mean_a - mean_b).squaredNorm();
}

namespace {

struct Candidate {
  double cost;
  int rep_min, rep_max;  // tie-break key: smallest member of each side
  int a, b;              // cluster ids
};

struct CandidateOrder {
  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    if (x.rep_min != y.rep_min) return x.rep_min > y.rep_min;
    return x.rep_max > y.rep_max;
  }
};

Eigen::VectorXd flatten_row_major(const Eigen::MatrixXd& block) {
  Eigen::VectorXd v(block.size());
  Eigen::Index idx = 0;
  for (Eigen::Index r = 0; r < block.rows(); ++r)
    for (Eigen::Index c = 0; c < block.cols(); ++c) v(idx++) = block(r, c);
  return v;
}

}  // namespace

Dendrogram ward_constrained(const FeatureSet& features, const ConnectivityGraph& graph) {
  const int N = features.count();
  if (N == 0) throw std::invalid_argument("empty feature set");
  if (graph.node_count != N)
    throw std::invalid_argument("graph size does not match feature count");
  for (const auto& f : features.features)
    if (f.rows() != features.features[0].rows() || f.cols() != features.features[0].cols())
      throw std::invalid_argument("feature shape mismatch");

  const int max_clusters = 2 * N;  // leaves plus at most N-1 merged clusters
  std::vector<Eigen::VectorXd> mean(static_cast<std::size_t>(max_clusters));
  std::vector<int> size(static_cast<std::size_t>(max_clusters), 0);
  std::vector<int> rep(static_cast<std::size_t>(max_clusters), 0);
  std::vector<bool> alive(static_cast<std::size_t>(max_clusters), false);
  std::vector<std::unordered_set<int>> nbrs(static_cast<std::size_t>(max_clusters));

  for (int i = 0; i < N; ++i) {
    mean[static_cast<std::size_t>(i)] = flatten_row_major(features.features[static_cast<std::size_t>(i)]);
    size[static_cast<std::size_t>(i)] = 1;
    rep[static_cast<std::size_t>(i)] = i;
    alive[static_cast<std::size_t>(i)] = true;
  }

  std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
  auto push_pair = [&](int a, int b) {
    heap.push({ward_cost(size[static_cast<std::size_t>(a)], mean[static_cast<std::size_t>(a)],
                         size[static_cast<std::size_t>(b)], mean[static_cast<std::size_t>(b)]),
               std::min(rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]),
               std::max(rep[static_cast<std::size_t>(a)], rep[static_cast<std::size_t>(b)]),
               a, b});
  };

  for (const auto& [i, j] : graph.edges) {
    if (i == j || i < 0 || j < 0 || i >= N || j >= N)
      throw std::invalid_argument("invalid graph edge");
    if (nbrs[static_cast<std::size_t>(i)].insert(j).second) {
      nbrs[static_cast<std::size_t>(j)].insert(i);
      push_pair(std::min(i, j), std::max(i, j));
    }
  }

  Dendrogram dendrogram;
  dendrogram.leaf_count = N;
  int next_id = N;

  while (!heap.empty()) {
    const Candidate c = heap.top();
    heap.pop();
    if (!alive[static_cast<std::size_t>(c.a)] || !alive[static_cast<std::size_t>(c.b)]) continue;

    const int m = next_id++;
    const int sa = size[static_cast<std::size_t>(c.a)];
    const int sb = size[static_cast<std::size_t>(c.b)];
    size[static_cast<std::size_t>(m)] = sa + sb;
    mean[static_cast<std::size_t>(m)] =
        (sa * mean[static_cast<std::size_t>(c.a)] + sb * mean[static_cast<std::size_t>(c.b)]) /
        static_cast<double>(sa + sb);
    rep[static_cast<std::size_t>(m)] =
        std::min(rep[static_cast<std::size_t>(c.a)], rep[static_cast<std::size_t>(c.b)]);
    alive[static_cast<std::size_t>(c.a)] = false;
    alive[static_cast<std::size_t>(c.b)] = false;
    alive[static_cast<std::size_t>(m)] = true;

    auto& merged = nbrs[static_cast<std::size_t>(m)];
    for (int old : {c.a, c.b})
      for (int x : nbrs[static_cast<std::size_t>(old)])
        if (x != c.a && x != c.b && alive[static_cast<std::size_t>(x)]) merged.insert(x);
    for (int x : merged) {
      auto& xn = nbrs[static_cast<std::size_t>(x)];
      xn.erase(c.a);
      xn.erase(c.b);
      xn.insert(m);
      push_pair(m, x);
    }
    nbrs[static_cast<std::size_t>(c.a)].clear();
    nbrs[static_cast<std::size_t>(c.b)].clear();

    dendrogram.merges.push_back({c.a, c.b, c.cost, sa + sb});
  }
  return dendrogram;
}

std::vector<int> cut(const Dendrogram& dendrogram, int k) {
  const int N = dendrogram.leaf_count;
  const int components = N - static_cast<int>(dendrogram.merges.size());
  if (k < components || k > N) throw std::invalid_argument("k out of range");

  std::vector<int> parent(static_cast<std::size_t>(N + dendrogram.merges.size()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };

  const int apply = N - k;
  for (int t = 0; t < apply; ++t) {
    const auto& m = dendrogram.merges[static_cast<std::size_t>(t)];
    const int id = N + t;
    parent[static_cast<std::size_t>(find(m.cluster_a))] = id;
    parent[static_cast<std::size_t>(find(m.cluster_b))] = id;
  }

  // Label clusters 1..k by increasing smallest leaf index.
  std::vector<int> root_label(parent.size(), 0);
  std::vector<int> labels(static_cast<std::size_t>(N), 0);
  int next_label = 0;
  for (int i = 0; i < N; ++i) {
    const int r = find(i);
    if (root_label[static_cast<std::size_t>(r)] == 0)
      root_label[static_cast<std::size_t>(r)] = ++next_label;
    labels[static_cast<std::size_t>(i)] = root_label[static_cast<std::size_t>(r)];
  }
  return labels;
}

}  // namespace dmdc

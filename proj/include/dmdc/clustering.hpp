#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "dmdc/features.hpp"

namespace dmdc {

/// Undirected merge-permission graph over the items being clustered.
struct ConnectivityGraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;

  static ConnectivityGraph complete(int n);
};

struct Merge {
  int cluster_a = 0;
  int cluster_b = 0;
  double cost = 0.0;
  int new_size = 0;
};

/// Merge tree: leaves are clusters 0..N-1, merge t creates cluster N+t.
struct Dendrogram {
  std::vector<Merge> merges;
  int leaf_count = 0;
};

/// Ward merge cost from constant-size cluster summaries:
/// (|a||b|/(|a|+|b|)) ||mean_a - mean_b||^2.
double ward_cost(int size_a, const Eigen::VectorXd& mean_a,
                 int size_b, const Eigen::VectorXd& mean_b);

/// Greedy connectivity-constrained Ward agglomeration over feature blocks
/// (flattened row-major). Stops when every connected component has merged
/// into a single cluster.
Dendrogram ward_constrained(const FeatureSet& features, const ConnectivityGraph& graph);

/// Flat partition with exactly k clusters, by undoing the last merges.
/// Labels are 1-based, assigned by increasing smallest member index.
std::vector<int> cut(const Dendrogram& dendrogram, int k);

}  // namespace dmdc

#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include <Eigen/Core>

namespace grasp {

// Exact nearest-neighbor search over a fixed set of 3D points.
// Median-split kd-tree; ties in distance are broken by point index so
// queries are deterministic regardless of build order.
class KdTree {
 public:
  KdTree() = default;

  explicit KdTree(const std::vector<Eigen::Vector3d>& points) { build(points); }

  void build(const std::vector<Eigen::Vector3d>& points) {
    points_ = &points;
    order_.resize(points.size());
    std::iota(order_.begin(), order_.end(), 0);
    nodes_.clear();
    nodes_.reserve(points.size());
    if (!points.empty()) root_ = build_range(0, static_cast<int>(points.size()));
  }

  size_t size() const { return points_ ? points_->size() : 0; }

  // Indices of the k nearest points, sorted by (distance, index).
  std::vector<int> knn(const Eigen::Vector3d& query, int k) const {
    std::vector<int> result;
    if (!points_ || points_->empty() || k <= 0) return result;
    k = std::min<int>(k, static_cast<int>(points_->size()));

    // max-heap on (dist2, index)
    std::priority_queue<std::pair<double, int>> heap;
    search_knn(root_, query, k, heap);
    result.resize(heap.size());
    for (int i = static_cast<int>(heap.size()) - 1; i >= 0; --i) {
      result[i] = heap.top().second;
      heap.pop();
    }
    return result;
  }

  // Indices of points within radius (inclusive), sorted by index.
  std::vector<int> radius(const Eigen::Vector3d& query, double r) const {
    std::vector<int> result;
    if (!points_ || points_->empty() || r < 0.0) return result;
    search_radius(root_, query, r * r, result);
    std::sort(result.begin(), result.end());
    return result;
  }

 private:
  struct Node {
    int index = -1;
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int build_range(int lo, int hi) {
    if (lo >= hi) return -1;
    // split along the widest axis of the range
    Eigen::Vector3d mn = (*points_)[order_[lo]];
    Eigen::Vector3d mx = mn;
    for (int i = lo + 1; i < hi; ++i) {
      mn = mn.cwiseMin((*points_)[order_[i]]);
      mx = mx.cwiseMax((*points_)[order_[i]]);
    }
    int axis = 0;
    (mx - mn).maxCoeff(&axis);

    int mid = (lo + hi) / 2;
    std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi,
                     [&](int a, int b) {
                       double pa = (*points_)[a][axis];
                       double pb = (*points_)[b][axis];
                       return pa < pb || (pa == pb && a < b);
                     });
    Node node;
    node.index = order_[mid];
    node.axis = axis;
    int self = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    int left = build_range(lo, mid);
    int right = build_range(mid + 1, hi);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  void search_knn(int node_id, const Eigen::Vector3d& q, int k,
                  std::priority_queue<std::pair<double, int>>& heap) const {
    if (node_id < 0) return;
    const Node& node = nodes_[node_id];
    const Eigen::Vector3d& p = (*points_)[node.index];
    double d2 = (p - q).squaredNorm();
    auto candidate = std::make_pair(d2, node.index);
    if (static_cast<int>(heap.size()) < k) {
      heap.push(candidate);
    } else if (candidate < heap.top()) {
      heap.pop();
      heap.push(candidate);
    }
    double delta = q[node.axis] - p[node.axis];
    int near = delta < 0.0 ? node.left : node.right;
    int far = delta < 0.0 ? node.right : node.left;
    search_knn(near, q, k, heap);
    if (static_cast<int>(heap.size()) < k || delta * delta <= heap.top().first) {
      search_knn(far, q, k, heap);
    }
  }

  void search_radius(int node_id, const Eigen::Vector3d& q, double r2,
                     std::vector<int>& out) const {
    if (node_id < 0) return;
    const Node& node = nodes_[node_id];
    const Eigen::Vector3d& p = (*points_)[node.index];
    if ((p - q).squaredNorm() <= r2) out.push_back(node.index);
    double delta = q[node.axis] - p[node.axis];
    int near = delta < 0.0 ? node.left : node.right;
    int far = delta < 0.0 ? node.right : node.left;
    search_radius(near, q, r2, out);
    if (delta * delta <= r2) search_radius(far, q, r2, out);
  }

  const std::vector<Eigen::Vector3d>* points_ = nullptr;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace grasp

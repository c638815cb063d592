#include "flowcut/tree.hpp"

#include <algorithm>
#include <deque>

namespace flowcut {
namespace {

class Binarizer {
 public:
  explicit Binarizer(DmcInstance& out) : out_(out) {}

  void group(std::int64_t parent, std::vector<std::int64_t> kids, std::int64_t lo,
             int level) {
    if (kids.size() <= 2) {
      for (std::int64_t c : kids) out_.nodes[c].parent = parent;
      return;
    }
    if (level >= 1 && fits(kids, lo, level)) {
      const std::int64_t mid = lo + (std::int64_t{1} << (level - 1));
      std::vector<std::int64_t> low, high;
      for (std::int64_t c : kids) (out_.nodes[c].lo < mid ? low : high).push_back(c);
      if (low.empty() || high.empty()) {
        group(parent, std::move(kids), low.empty() ? mid : lo, level - 1);
        return;
      }
      attach(parent, std::move(low), lo, level - 1);
      attach(parent, std::move(high), mid, level - 1);
      return;
    }
    const std::size_t half = kids.size() / 2;
    attach(parent, {kids.begin(), kids.begin() + half}, 0, -1);
    attach(parent, {kids.begin() + half, kids.end()}, 0, -1);
  }

 private:
  bool fits(const std::vector<std::int64_t>& kids, std::int64_t lo, int level) const {
    const std::int64_t hi = lo + (std::int64_t{1} << level);
    for (std::int64_t c : kids) {
      const DmcNode& n = out_.nodes[c];
      if (n.level < 0 || n.level >= level || n.lo < lo ||
          n.lo + (std::int64_t{1} << n.level) > hi)
        return false;
    }
    return true;
  }

  void attach(std::int64_t parent, std::vector<std::int64_t> kids, std::int64_t lo,
              int level) {
    if (kids.size() == 1) {
      out_.nodes[kids[0]].parent = parent;
      return;
    }
    DmcNode syn;
    syn.id = static_cast<std::int64_t>(out_.nodes.size());
    syn.parent = parent;
    syn.lo = lo;
    syn.level = level;
    syn.synthetic = true;
    out_.nodes.push_back(syn);
    group(syn.id, std::move(kids), lo, level);
  }

  DmcInstance& out_;
};

}  // namespace

DmcInstance binarize(const DmcInstance& dmc) {
  DmcInstance out = dmc;
  auto kids = children_of(dmc);
  Binarizer b(out);
  for (std::size_t v = 0; v < dmc.size(); ++v) {
    if (kids[v].size() <= 2) continue;
    const DmcNode& n = dmc.nodes[v];
    b.group(static_cast<std::int64_t>(v), kids[v], n.lo, n.level);
  }
  return out;
}

std::vector<int> ReducedTree::segments_above(std::int64_t vertex) const {
  std::vector<int> out;
  for (int s = segment_of[vertex]; s != -1; s = segments[s].parent) out.push_back(s);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> ReducedTree::segment_distances() const {
  const std::size_t m = segments.size();
  // Two segments are adjacent when they share a reduced vertex.
  std::vector<std::vector<int>> adj(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const TreeSegment& x = segments[a];
      const TreeSegment& y = segments[b];
      if (x.top == y.top || x.top == y.bottom || x.bottom == y.top ||
          x.bottom == y.bottom) {
        adj[a].push_back(static_cast<int>(b));
        adj[b].push_back(static_cast<int>(a));
      }
    }
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, -1));
  for (std::size_t s = 0; s < m; ++s) {
    std::deque<int> queue{static_cast<int>(s)};
    dist[s][s] = 0;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : adj[u])
        if (dist[s][w] < 0) {
          dist[s][w] = dist[s][u] + 1;
          queue.push_back(w);
        }
    }
  }
  return dist;
}

ReducedTree build_reduced_tree(const DmcInstance& dmc) {
  ReducedTree rt;
  auto kids = children_of(dmc);
  rt.segment_of.assign(dmc.size(), -1);
  rt.child_segments.assign(dmc.size(), {});
  for (std::int64_t v : topological_order(dmc)) {
    const bool reduced = dmc.is_root(v) || kids[v].size() != 1;
    if (!reduced) continue;
    if (dmc.is_root(v)) rt.roots.push_back(v);
    rt.vertices.push_back(v);
    const int above = rt.segment_of[v];
    for (std::int64_t c : kids[v]) {
      TreeSegment seg;
      seg.top = v;
      seg.parent = above;
      seg.depth = above < 0 ? 1 : rt.segments[above].depth + 1;
      std::int64_t u = c;
      while (true) {
        seg.edges.push_back(u);
        if (kids[u].size() != 1) break;
        u = kids[u][0];
      }
      seg.bottom = u;
      const int id = static_cast<int>(rt.segments.size());
      for (std::int64_t e : seg.edges) rt.segment_of[e] = id;
      rt.child_segments[v].push_back(id);
      rt.H = std::max(rt.H, seg.depth);
      rt.segments.push_back(std::move(seg));
    }
  }
  return rt;
}

bool is_confined(const DmcInstance& dmc, const ReducedTree& rt, const DemandPath& p) {
  auto edges = path_edges(dmc, p);
  return rt.segment_of[edges.front()] == rt.segment_of[edges.back()];
}

}  // namespace flowcut

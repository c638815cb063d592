#include "flowcut/gen.hpp"

namespace flowcut {
namespace {

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

}  // namespace

WftInstance random_instance(const JobBounds& b, Rng& rng) {
  if (b.n == 0 || b.p_max < 1 || b.w_max < 1 || b.r_max < 0)
    throw Error(ErrorCode::kInvalidArgument, "generator bounds must be positive");
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < b.n; ++i) {
    Job j;
    j.id = static_cast<JobId>(i);
    j.p = uniform(rng, 1, b.p_max);
    j.w = uniform(rng, 1, b.w_max);
    j.r = uniform(rng, 0, b.r_max);
    jobs.push_back(j);
  }
  return validate_instance(std::move(jobs));
}

DmcInstance random_dmc(const DmcBounds& b, Rng& rng) {
  if (b.max_edges == 0 || b.cost_max < 1 || b.size_max < 1)
    throw Error(ErrorCode::kInvalidArgument, "generator bounds must be positive");
  const auto edges = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(b.max_edges)));
  DmcInstance dmc;
  dmc.nodes.push_back({0, kNoNode, 0, 0});
  std::vector<int> kids(1, 0);
  for (std::size_t i = 1; i <= edges; ++i) {
    std::int64_t parent;
    do {
      parent = uniform(rng, 0, static_cast<std::int64_t>(i) - 1);
    } while (b.binary && kids[parent] >= 2);
    ++kids[parent];
    kids.push_back(0);
    DmcNode v;
    v.id = static_cast<std::int64_t>(i);
    v.parent = parent;
    v.cost = uniform(rng, 1, b.cost_max);
    v.size = uniform(rng, 1, b.size_max);
    dmc.nodes.push_back(v);
  }
  const auto paths = uniform(rng, 1, static_cast<std::int64_t>(std::max<std::size_t>(b.max_paths, 1)));
  for (std::int64_t k = 0; k < paths; ++k) {
    const std::int64_t bottom = uniform(rng, 1, static_cast<std::int64_t>(edges));
    std::vector<std::int64_t> above;
    for (std::int64_t v = dmc.nodes[bottom].parent; v != kNoNode; v = dmc.nodes[v].parent)
      above.push_back(v);
    const std::int64_t top = above[uniform(rng, 0, static_cast<std::int64_t>(above.size()) - 1)];
    std::int64_t room = 0;
    for (std::int64_t v = bottom; v != top; v = dmc.nodes[v].parent) room += dmc.nodes[v].size;
    dmc.paths.push_back({top, bottom, uniform(rng, 1, room)});
  }
  dmc.paths = dedupe_paths(std::move(dmc.paths));
  return dmc;
}

PrioritySegment random_priority_segment(std::size_t s, Rng& rng) {
  PrioritySegment seg;
  const auto hi = static_cast<std::int64_t>(s);
  for (std::size_t i = 0; i < s; ++i) seg.edge_priority.push_back(uniform(rng, 1, hi));
  const auto paths = uniform(rng, 1, 2 * hi);
  for (std::int64_t k = 0; k < paths; ++k) {
    auto a = static_cast<std::size_t>(uniform(rng, 0, hi - 1));
    auto c = static_cast<std::size_t>(uniform(rng, 0, hi - 1));
    if (a > c) std::swap(a, c);
    seg.paths.push_back({a, c, uniform(rng, 1, hi)});
  }
  return seg;
}

}  // namespace flowcut

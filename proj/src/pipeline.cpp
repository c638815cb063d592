#include "flowcut/pipeline.hpp"

#include <chrono>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "flowcut/covering.hpp"
#include "flowcut/reduction.hpp"
#include "flowcut/segments.hpp"

namespace flowcut {
namespace {

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& out) : out_(out) {}

  template <typename F>
  auto run(const char* stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    for (StageTiming& s : out_)
      if (s.stage == stage) {
        s.seconds += dt.count();
        return result;
      }
    out_.push_back({stage, dt.count()});
    return result;
  }

 private:
  std::vector<StageTiming>& out_;
};

}  // namespace

PipelineResult solve_instance(const WftInstance& inst, int lp_exponent,
                              const SolveOptions& options) {
  if (lp_exponent < 1) throw Error(ErrorCode::kInvalidArgument, "lp exponent must be >= 1");
  PipelineResult out;
  StageClock clock(out.timings);
  boost::multiprecision::cpp_int states = 0;
  std::map<std::int64_t, JobId> owner;  // absolute slot -> job

  const auto parts = clock.run("decompose", [&] { return busy_decompose(inst); });
  for (const WftInstance& part : parts) {
    const WftInstance padded = clock.run("pad", [&] { return pad_to_power_of_two(part); });
    const auto segs = clock.run("segments", [&] { return all_segments(padded); });
    const CoverModel ip2 = clock.run("ip2", [&] { return build_ip2(padded, segs); });
    const Reduction red =
        clock.run("reduce", [&] { return reduce_to_dmc(padded, segs, ip2, lp_exponent); });
    const Preselection pre = clock.run("preselect", [&] {
      return preselect_short_edges(red, padded.min_processing(false));
    });
    if (pre.contracted.infeasible)
      throw Error(ErrorCode::kPipelineInfeasible, "contraction left an uncoverable path");

    const SolveResult res = clock.run("dmc_solve", [&] { return solve(pre.contracted.dmc, options); });
    if (!res.feasible) throw Error(ErrorCode::kPipelineInfeasible, "DMC instance infeasible");
    out.H = std::max(out.H, res.H);
    out.dp_entries += res.dp_entries;
    for (const GuessReport& g : res.guesses)
      if (!g.state_count.empty()) states += boost::multiprecision::cpp_int(g.state_count);

    std::vector<std::int64_t> selected = pre.forced;
    for (std::int64_t v : res.selected) selected.push_back(pre.contracted.original[v]);
    const Schedule local = clock.run("lift", [&] {
      CoverSolution y;
      try {
        y = lift_solution(padded, segs, red, selected, lp_exponent);
      } catch (const Error& e) {
        throw Error(ErrorCode::kPipelineInfeasible, e.what());
      }
      const CoverSolution x = ip2_to_ip1(padded, segs, y, lp_exponent);
      return edf_schedule_from_ip1(padded, x);
    });
    for (std::size_t t = 0; t < local.slot_owner.size(); ++t) {
      const JobId o = local.slot_owner[t];
      if (o == kIdle || padded.jobs[padded.index_of(o)].padding) continue;
      owner[part.offset + static_cast<std::int64_t>(t)] = o;
    }
    out.part_results.push_back(res);
  }
  out.parts = parts.size();
  if (!owner.empty()) {
    out.schedule.slot_owner.assign(static_cast<std::size_t>(owner.rbegin()->first + 1), kIdle);
    for (const auto& [t, o] : owner) out.schedule.slot_owner[t] = o;
  }
  out.state_count = states.str();
  if (!is_feasible_schedule(inst, out.schedule))
    throw Error(ErrorCode::kPipelineInfeasible, "merged schedule is infeasible");
  out.cost = evaluate_schedule(inst, out.schedule, lp_exponent);
  return out;
}

}  // namespace flowcut

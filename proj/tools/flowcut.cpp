// flowcut command line: gen, solve, oracle, compare, verify.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "flowcut/gen.hpp"
#include "flowcut/io.hpp"
#include "flowcut/oracle.hpp"
#include "flowcut/pipeline.hpp"

namespace fs = std::filesystem;
using namespace flowcut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct Common {
  std::string format = "json";
  bool timings = false;
  int lp = 1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_text_file(path, text);
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FLOWCUT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) n = static_cast<unsigned>(v);
    else throw Error(ErrorCode::kInvalidArgument, "FLOWCUT_THREADS must be a positive integer");
  }
  return n;
}

// Runs f(i) for i in [0, n) on up to `threads` workers.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, n); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

// ---- gen ----

struct GenArgs {
  std::uint64_t seed = 1;
  std::string kind = "wft";
  JobBounds jobs;
  DmcBounds dmc;
  std::size_t count = 1;
  std::string out;
  std::string out_dir;
};

int run_gen(const GenArgs& a) {
  if (a.jobs.n == 0) throw Error(ErrorCode::kInvalidArgument, "--n must be positive");
  Rng rng(a.seed);
  auto make = [&] {
    return a.kind == "dmc" ? dmc_to_json(random_dmc(a.dmc, rng))
                           : instance_to_json(random_instance(a.jobs, rng));
  };
  if (a.out_dir.empty()) {
    for (std::size_t i = 0; i < a.count; ++i) emit(a.out, make().dump(2) + "\n");
    return kExitOk;
  }
  fs::create_directories(a.out_dir);
  for (std::size_t i = 0; i < a.count; ++i) {
    std::ostringstream name;
    name << "inst_" << std::setw(4) << std::setfill('0') << i << ".json";
    write_text_file((fs::path(a.out_dir) / name.str()).string(), make().dump(2) + "\n");
  }
  return kExitOk;
}

// ---- solve ----

struct SolveArgs {
  std::string instance;
  std::string schedule_out;
  std::string report_out;
};

Json flows_json(const WftInstance& inst, const Schedule& s) {
  Json flows = Json::array();
  auto outcomes = schedule_outcomes(inst, s);
  std::sort(outcomes.begin(), outcomes.end(),
            [](const JobOutcome& a, const JobOutcome& b) { return a.id < b.id; });
  for (const JobOutcome& o : outcomes)
    flows.push_back({{"id", o.id}, {"completion", o.completion}, {"flow", o.flow}});
  return flows;
}

int run_solve(const SolveArgs& a, const Common& c) {
  const WftInstance inst = instance_from_json(read_json_file(a.instance));
  const PipelineResult res = solve_instance(inst, c.lp);
  if (!a.schedule_out.empty()) emit(a.schedule_out, schedule_to_json(res.schedule).dump() + "\n");
  std::string text;
  if (c.format == "csv") {
    text = "cost,H,state_count,dp_entries,parts";
    if (c.timings)
      for (const StageTiming& t : res.timings) text += ",t_" + t.stage;
    text += "\n" + std::to_string(res.cost) + "," + std::to_string(res.H) + "," +
            res.state_count + "," + std::to_string(res.dp_entries) + "," +
            std::to_string(res.parts);
    if (c.timings)
      for (const StageTiming& t : res.timings) text += "," + fixed(t.seconds);
    text += "\n";
  } else {
    Json r;
    r["format"] = kFormatTag;
    r["cost"] = res.cost;
    r["lp"] = c.lp;
    r["H"] = res.H;
    r["parts"] = res.parts;
    r["state_count"] = res.state_count;
    r["dp_entries"] = res.dp_entries;
    r["jobs"] = flows_json(inst, res.schedule);
    r["dmc"] = Json::array();
    for (const SolveResult& p : res.part_results) r["dmc"].push_back(solve_result_to_json(p));
    if (c.timings) {
      r["timings"] = Json::object();
      for (const StageTiming& t : res.timings) r["timings"][t.stage] = t.seconds;
    }
    if (a.schedule_out.empty()) r["schedule"] = schedule_to_json(res.schedule)["slots"];
    text = r.dump(2) + "\n";
  }
  emit(a.report_out, text);
  return kExitOk;
}

// ---- oracle ----

int run_oracle(const std::string& path, const Common& c, const OracleCaps& caps) {
  const Json j = read_json_file(path);
  Json r;
  r["format"] = kFormatTag;
  if (j.contains("nodes")) {
    const DmcOptimum opt = brute_force_dmc(dmc_from_json(j), caps);
    r["feasible"] = opt.feasible;
    r["cost"] = opt.feasible ? Json(opt.cost) : Json(nullptr);
    r["selected"] = opt.edges;
  } else {
    const WftInstance inst = instance_from_json(j);
    WftInstance local = inst;
    // The search runs from slot 0; shift so the earliest release is 0.
    const std::int64_t shift = inst.jobs.front().r;
    for (Job& job : local.jobs) job.r -= shift;
    WftOptimum opt = brute_force_wft(local, c.lp, caps);
    Schedule s;
    s.slot_owner.assign(static_cast<std::size_t>(shift), kIdle);
    s.slot_owner.insert(s.slot_owner.end(), opt.schedule.slot_owner.begin(),
                        opt.schedule.slot_owner.end());
    r["cost"] = opt.cost;
    r["lp"] = c.lp;
    r["schedule"] = schedule_to_json(s)["slots"];
  }
  if (c.format == "csv") {
    std::cout << "cost\n" << (r["cost"].is_null() ? "" : r["cost"].dump()) << "\n";
  } else {
    std::cout << r.dump(2) << "\n";
  }
  return kExitOk;
}

// ---- compare ----

struct CompareRow {
  std::string id;
  std::string status = "ok";  // ok | too_large | infeasible | error
  std::int64_t oracle = 0;
  std::int64_t algorithm = 0;
  int H = 0;
  std::string states;
  double seconds = 0;
  std::string detail;
};

CompareRow compare_one(const fs::path& file, int lp, const OracleCaps& caps) {
  CompareRow row;
  row.id = file.stem().string();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const WftInstance inst = instance_from_json(read_json_file(file.string()));
    WftInstance local = inst;
    const std::int64_t shift = inst.jobs.front().r;
    for (Job& job : local.jobs) job.r -= shift;
    try {
      row.oracle = brute_force_wft(local, lp, caps).cost;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTooLarge) throw;
      row.status = "too_large";
      row.detail = e.what();
      return row;
    }
    const PipelineResult res = solve_instance(inst, lp);
    row.algorithm = res.cost;
    row.H = res.H;
    row.states = res.state_count;
    if (!is_feasible_schedule(inst, res.schedule) || res.cost < row.oracle) row.status = "infeasible";
  } catch (const Error& e) {
    row.status = e.code() == ErrorCode::kPipelineInfeasible ? "infeasible" : "error";
    row.detail = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::string ratio_text(const CompareRow& r) {
  if (r.status != "ok") return "";
  if (r.oracle == 0) return r.algorithm == 0 ? "1.000000" : "inf";
  return fixed(static_cast<double>(r.algorithm) / static_cast<double>(r.oracle));
}

int run_compare(const std::string& dir, const Common& c, const OracleCaps& caps) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIoError, dir + " is not a directory");
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CompareRow> rows(files.size());
  parallel_for(files.size(), thread_count(),
               [&](std::size_t i) { rows[i] = compare_one(files[i], c.lp, caps); });

  bool bad = false;
  double max_ratio = 0, sum_ratio = 0;
  std::size_t counted = 0, skipped = 0;
  for (const CompareRow& r : rows) {
    if (r.status == "infeasible" || r.status == "error") bad = true;
    if (r.status == "too_large") ++skipped;
    if (r.status != "ok" || r.oracle == 0) continue;
    const double q = static_cast<double>(r.algorithm) / static_cast<double>(r.oracle);
    max_ratio = std::max(max_ratio, q);
    sum_ratio += q;
    ++counted;
  }
  const double mean = counted ? sum_ratio / static_cast<double>(counted) : 0;

  if (c.format == "csv") {
    std::cout << "id,status,oracle_cost,algorithm_cost,ratio,H,state_count";
    if (c.timings) std::cout << ",wall_time_s";
    std::cout << "\n";
    for (const CompareRow& r : rows) {
      const bool ok = r.status == "ok";
      std::cout << csv_field(r.id) << "," << r.status << ","
                << (ok ? std::to_string(r.oracle) : "") << ","
                << (ok ? std::to_string(r.algorithm) : "") << "," << ratio_text(r) << ","
                << (ok ? std::to_string(r.H) : "") << "," << r.states;
      if (c.timings) std::cout << "," << fixed(r.seconds);
      std::cout << "\n";
    }
    std::cerr << "instances=" << rows.size() << " compared=" << counted << " skipped=" << skipped
              << " max_ratio=" << fixed(max_ratio) << " mean_ratio=" << fixed(mean) << "\n";
  } else {
    Json out;
    out["format"] = kFormatTag;
    out["rows"] = Json::array();
    for (const CompareRow& r : rows) {
      Json row{{"id", r.id}, {"status", r.status}};
      if (r.status == "ok") {
        row["oracle_cost"] = r.oracle;
        row["algorithm_cost"] = r.algorithm;
        row["ratio"] = ratio_text(r);
        row["H"] = r.H;
        row["state_count"] = r.states;
      }
      if (!r.detail.empty()) row["detail"] = r.detail;
      if (c.timings) row["wall_time_s"] = r.seconds;
      out["rows"].push_back(row);
    }
    out["summary"] = {{"instances", rows.size()},
                      {"compared", counted},
                      {"skipped", skipped},
                      {"max_ratio", fixed(max_ratio)},
                      {"mean_ratio", fixed(mean)}};
    std::cout << out.dump(2) << "\n";
  }
  return bad ? kExitInfeasible : kExitOk;
}

// ---- verify ----

int run_verify(const std::string& inst_path, const std::string& sched_path, const Common& c) {
  const WftInstance inst = instance_from_json(read_json_file(inst_path));
  const Schedule s = schedule_from_json(read_json_file(sched_path));
  bool ok = true;
  std::string why;
  std::int64_t cost = 0;
  try {
    cost = evaluate_schedule(inst, s, c.lp);
  } catch (const Error& e) {
    ok = false;
    why = e.what();
  }
  if (c.format == "csv") {
    std::cout << "feasible,cost\n" << (ok ? "true," + std::to_string(cost) : "false,") << "\n";
  } else {
    Json r{{"format", kFormatTag}, {"feasible", ok}};
    r["cost"] = ok ? Json(cost) : Json(nullptr);
    if (!ok) r["reason"] = why;
    std::cout << r.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted flow time scheduling via demand multicut on trees"};
  app.require_subcommand(1);
  Common common;
  OracleCaps caps;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--lp", common.lp, "Exponent of the l_p objective")->check(CLI::Range(1, 8));
  };
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--max-jobs", caps.max_jobs, "Oracle cap on jobs");
    sub->add_option("--max-work", caps.max_work, "Oracle cap on total processing");
    sub->add_option("--max-edges", caps.max_edges, "Oracle cap on DMC edges");
  };

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate seeded random instances");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--kind", gen.kind, "Instance kind")->check(CLI::IsMember({"wft", "dmc"}));
  g->add_option("--n", gen.jobs.n, "Number of jobs");
  g->add_option("--p-max", gen.jobs.p_max, "Largest processing time")->check(CLI::PositiveNumber);
  g->add_option("--w-max", gen.jobs.w_max, "Largest weight")->check(CLI::PositiveNumber);
  g->add_option("--r-max", gen.jobs.r_max, "Largest release date")->check(CLI::NonNegativeNumber);
  g->add_option("--edges", gen.dmc.max_edges, "Largest DMC edge count")->check(CLI::PositiveNumber);
  g->add_option("--paths", gen.dmc.max_paths, "Largest DMC path count")->check(CLI::PositiveNumber);
  g->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
  g->add_option("--out", gen.out, "Output file (stdout by default)");
  g->add_option("--out-dir", gen.out_dir, "Write a corpus of numbered files here");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance end to end");
  s->add_option("instance", solve.instance, "Instance file")->required()->check(CLI::ExistingFile);
  s->add_option("--schedule-out", solve.schedule_out, "Write the schedule file here");
  s->add_option("--report-out", solve.report_out, "Write the report here (stdout by default)");
  s->add_flag("--timings", common.timings, "Include per-stage wall times");
  add_common(s);

  std::string oracle_path;
  auto* o = app.add_subcommand("oracle", "Exact optimum of a small instance");
  o->add_option("instance", oracle_path, "Scheduling or DMC instance file")
      ->required()
      ->check(CLI::ExistingFile);
  add_common(o);
  add_caps(o);

  std::string corpus;
  auto* cmp = app.add_subcommand("compare", "Compare the pipeline with the oracle on a corpus");
  cmp->add_option("corpus", corpus, "Directory of instance files")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmp->add_flag("--timings", common.timings, "Add a wall time column");
  add_common(cmp);
  add_caps(cmp);

  std::string verify_inst, verify_sched;
  auto* v = app.add_subcommand("verify", "Check a schedule against an instance");
  v->add_option("instance", verify_inst, "Instance file")->required()->check(CLI::ExistingFile);
  v->add_option("schedule", verify_sched, "Schedule file")->required()->check(CLI::ExistingFile);
  add_common(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return run_gen(gen);
    if (*s) return run_solve(solve, common);
    if (*o) return run_oracle(oracle_path, common, caps);
    if (*cmp) return run_compare(corpus, common, caps);
    if (*v) return run_verify(verify_inst, verify_sched, common);
  } catch (const Error& e) {
    std::cerr << "flowcut: " << e.what() << "\n";
    return e.code() == ErrorCode::kPipelineInfeasible ? kExitInfeasible : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "flowcut: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

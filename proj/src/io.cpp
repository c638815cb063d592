#include "flowcut/io.hpp"

#include <fstream>
#include <sstream>

namespace flowcut {
namespace {

void check_format(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "expected a JSON object");
  if (j.contains("format") && j["format"] != kFormatTag)
    throw Error(ErrorCode::kParseError, "unknown format " + j["format"].dump());
}

std::int64_t int_field(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing field ") + key);
  const Json& v = obj[key];
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return static_cast<std::int64_t>(d);
    throw Error(ErrorCode::kNonIntegralField, std::string("field ") + key + " = " + v.dump());
  }
  throw Error(ErrorCode::kParseError, std::string("field ") + key + " is not a number");
}

}  // namespace

Json instance_to_json(const WftInstance& inst) {
  std::vector<Job> jobs;
  for (const Job& j : inst.jobs)
    if (!j.padding) jobs.push_back(j);
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
  Json out;
  out["format"] = kFormatTag;
  out["jobs"] = Json::array();
  for (const Job& j : jobs)
    out["jobs"].push_back({{"id", j.id}, {"p", j.p}, {"w", j.w}, {"r", j.r + inst.offset}});
  return out;
}

WftInstance instance_from_json(const Json& j) {
  check_format(j);
  if (!j.contains("jobs") || !j["jobs"].is_array())
    throw Error(ErrorCode::kParseError, "missing jobs array");
  std::vector<Job> jobs;
  for (const Json& o : j["jobs"]) {
    if (!o.is_object()) throw Error(ErrorCode::kParseError, "job is not an object");
    Job job;
    job.id = int_field(o, "id");
    job.p = int_field(o, "p");
    job.w = int_field(o, "w");
    job.r = int_field(o, "r");
    jobs.push_back(job);
  }
  return validate_instance(std::move(jobs));
}

Json schedule_to_json(const Schedule& s) {
  Json out;
  out["format"] = kFormatTag;
  Json slots = Json::array();
  for (JobId o : s.slot_owner) slots.push_back(o == kIdle ? Json(nullptr) : Json(o));
  out["slots"] = std::move(slots);
  return out;
}

Schedule schedule_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    check_format(j);
    if (!j.contains("slots")) throw Error(ErrorCode::kParseError, "missing slots");
    arr = &j["slots"];
  }
  if (!arr->is_array()) throw Error(ErrorCode::kParseError, "slots is not an array");
  Schedule s;
  for (const Json& v : *arr) {
    if (v.is_null()) s.slot_owner.push_back(kIdle);
    else if (v.is_number_integer()) s.slot_owner.push_back(v.get<JobId>());
    else throw Error(ErrorCode::kParseError, "bad slot owner " + v.dump());
  }
  return s;
}

Json cover_to_json(const WftInstance& inst, const std::vector<SegmentList>& segs,
                   const CoverSolution& sol) {
  Json out;
  out["format"] = kFormatTag;
  out["kind"] = sol.kind == CoverKind::kIp1 ? "ip1" : "ip2";
  out["cost"] = sol.cost;
  Json sel = Json::array();
  for (std::size_t i = 0; i < sol.selected.size(); ++i)
    for (std::int64_t x : sol.selected[i]) {
      const JobId id = inst.jobs[i].id;
      if (sol.kind == CoverKind::kIp1) {
        sel.push_back({id, x + inst.offset});
      } else {
        const DyadicSegment& s = segs[i][x];
        sel.push_back({id, {s.lo() + inst.offset, s.hi() + inst.offset}});
      }
    }
  out["selected"] = std::move(sel);
  return out;
}

Json dmc_to_json(const DmcInstance& dmc) {
  Json out;
  out["format"] = kFormatTag;
  out["nodes"] = Json::array();
  for (const DmcNode& v : dmc.nodes)
    out["nodes"].push_back({{"id", v.id},
                            {"parent", v.parent == kNoNode ? Json(nullptr) : Json(v.parent)},
                            {"cost", v.cost},
                            {"size", v.size}});
  out["paths"] = Json::array();
  for (const DemandPath& p : dmc.paths)
    out["paths"].push_back({{"top", p.top}, {"bottom", p.bottom}, {"demand", p.demand}});
  return out;
}

DmcInstance dmc_from_json(const Json& j) {
  check_format(j);
  if (!j.contains("nodes") || !j["nodes"].is_array())
    throw Error(ErrorCode::kParseError, "missing nodes array");
  DmcInstance dmc;
  for (const Json& o : j["nodes"]) {
    DmcNode v;
    v.id = int_field(o, "id");
    v.parent = o.contains("parent") && !o["parent"].is_null() ? int_field(o, "parent") : kNoNode;
    v.cost = o.contains("cost") ? int_field(o, "cost") : 0;
    v.size = o.contains("size") ? int_field(o, "size") : 0;
    dmc.nodes.push_back(v);
  }
  if (j.contains("paths"))
    for (const Json& o : j["paths"])
      dmc.paths.push_back({int_field(o, "top"), int_field(o, "bottom"), int_field(o, "demand")});
  validate_dmc(dmc);
  return dmc;
}

Json guess_to_json(const GuessReport& g) {
  return {{"cmax_guess", g.cmax_guess}, {"H", g.H},
          {"tau_min", g.tau_min},       {"tau_max", g.tau_max},
          {"state_count", g.state_count}, {"dp_entries", g.dp_entries},
          {"cost", g.cost < 0 ? Json(nullptr) : Json(g.cost)},
          {"forced_cost", g.forced_cost}};
}

Json solve_result_to_json(const SolveResult& r) {
  Json out;
  out["format"] = kFormatTag;
  out["feasible"] = r.feasible;
  out["cost"] = r.feasible ? Json(r.cost) : Json(nullptr);
  out["H"] = r.H;
  out["dp_entries"] = r.dp_entries;
  out["winning_guess"] = r.winning_guess < 0 ? Json(nullptr) : Json(r.winning_guess);
  out["selected"] = r.selected;
  out["guesses"] = Json::array();
  for (const GuessReport& g : r.guesses) out["guesses"].push_back(guess_to_json(g));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace flowcut

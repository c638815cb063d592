#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "flowcut/core.hpp"
#include "flowcut/covering.hpp"
#include "flowcut/dmc.hpp"
#include "flowcut/dmc_solver.hpp"

namespace flowcut {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatTag = "flowcut-v1";

// Padding jobs are never written.
Json instance_to_json(const WftInstance& inst);
WftInstance instance_from_json(const Json& j);

// {"format", "slots": [owner or null per slot]}
Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

// {"kind", "selected": [[job id, slot | [lo, hi]], ...]}
Json cover_to_json(const WftInstance& inst, const std::vector<SegmentList>& segs,
                   const CoverSolution& sol);

Json dmc_to_json(const DmcInstance& dmc);
DmcInstance dmc_from_json(const Json& j);

Json guess_to_json(const GuessReport& g);
Json solve_result_to_json(const SolveResult& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Field quoting for CSV output; quotes only when needed.
std::string csv_field(const std::string& s);

}  // namespace flowcut

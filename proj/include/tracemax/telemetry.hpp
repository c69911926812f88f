#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracemax/solver.hpp"

namespace tracemax {

// CSV schema, in this exact column order:
//   cycle,micro_index,pivot_i,pivot_j,mode,applied,trace,rel_offnorm,lambda_pivot_abs2,lambda_spec_norm
// pivot_i/pivot_j/mode are 1-based in the file; mode 0 marks the symmetric
// solver's all-modes rotation. Floats carry 17 significant digits.
void write_telemetry_csv(const DecompositionResult& result, std::ostream& os);
void write_telemetry_csv_file(const DecompositionResult& result, const std::string& path);

// Histogram over iterations of how many microiterations were applied,
// aggregated over all cycles (index k = iterations with k applications).
std::vector<long long> micro_histogram_total(const DecompositionResult& result);

const char* status_name(SolverStatus status);

// Summary with the keys: converged, cycles, final_trace, final_rel_offnorm,
// degenerate_skips, micro_apply_histogram, micro_apply_histogram_per_cycle,
// plus run provenance and the conservation diagnostics.
nlohmann::json summary_json(const DecompositionResult& result);

} // namespace tracemax

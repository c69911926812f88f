#include "tracemax/telemetry.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace tracemax {

namespace {

void append_g17(std::string& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

} // namespace

void write_telemetry_csv(const DecompositionResult& result, std::ostream& os)
{
    os << "cycle,micro_index,pivot_i,pivot_j,mode,applied,trace,rel_offnorm,lambda_pivot_abs2,lambda_spec_norm\n";
    std::string line;
    for (const TraceRecord& r : result.telemetry) {
        line.clear();
        line += std::to_string(r.cycle);
        line += ',';
        line += std::to_string(r.micro_index);
        line += ',';
        line += std::to_string(r.pivot_i + 1);
        line += ',';
        line += std::to_string(r.pivot_j + 1);
        line += ',';
        line += std::to_string(r.mode + 1); // -1 (all modes) becomes 0
        line += ',';
        line += r.applied ? '1' : '0';
        line += ',';
        append_g17(line, r.trace);
        line += ',';
        append_g17(line, r.rel_offnorm);
        line += ',';
        append_g17(line, r.lambda_pivot_abs2);
        line += ',';
        append_g17(line, r.lambda_spec_norm);
        line += '\n';
        os << line;
    }
}

void write_telemetry_csv_file(const DecompositionResult& result, const std::string& path)
{
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_telemetry_csv(result, os);
}

std::vector<long long> micro_histogram_total(const DecompositionResult& result)
{
    std::vector<long long> total;
    for (const auto& cyc : result.micro_hist_per_cycle) {
        if (cyc.size() > total.size()) total.resize(cyc.size(), 0);
        for (std::size_t k = 0; k < cyc.size(); ++k) total[k] += cyc[k];
    }
    return total;
}

const char* status_name(SolverStatus status)
{
    switch (status) {
        case SolverStatus::Converged: return "converged";
        case SolverStatus::CycleCapReached: return "cycle_cap";
        case SolverStatus::DegenerateStall: return "degenerate_stall";
    }
    return "unknown";
}

nlohmann::json summary_json(const DecompositionResult& result)
{
    nlohmann::json j;
    j["converged"] = result.converged;
    j["status"] = status_name(result.status);
    if (!result.diagnostic.empty()) j["diagnostic"] = result.diagnostic;
    j["cycles"] = result.cycles;
    j["initial_trace"] = result.initial_trace;
    j["initial_rel_offnorm"] = result.initial_rel_offnorm;
    j["final_trace"] = result.final_trace;
    j["final_rel_offnorm"] = result.final_rel_offnorm;
    j["degenerate_skips"] = result.degenerate_skips;
    j["input_norm"] = result.input_norm;
    j["max_norm_drift"] = result.max_norm_drift;
    j["max_orthogonality_error"] = result.max_orthogonality_error;
    j["max_reconstruction_error"] = result.max_reconstruction_error;
    if (result.symmetric_run) j["max_symmetry_error"] = result.max_symmetry_error;
    j["micro_apply_histogram"] = micro_histogram_total(result);
    j["micro_apply_histogram_per_cycle"] = result.micro_hist_per_cycle;
    return j;
}

} // namespace tracemax

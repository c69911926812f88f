#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "tracemax/random_tensors.hpp"
#include "tracemax/solver.hpp"
#include "tracemax/telemetry.hpp"

using namespace tracemax;

namespace {

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TEST(TelemetryCsv, SchemaAndOrdering)
{
    const auto gen = gen_orth_diagonalizable(3, 5, 90);
    SolverConfig cfg;
    cfg.max_cycles = 4;
    const DecompositionResult res = run_als(gen.tensor, cfg);

    std::ostringstream os;
    write_telemetry_csv(res, os);
    const auto lines = split_lines(os.str());
    ASSERT_EQ(lines.size(), res.telemetry.size() + 1);
    EXPECT_EQ(lines[0], "cycle,micro_index,pivot_i,pivot_j,mode,applied,trace,rel_offnorm,lambda_pivot_abs2,lambda_spec_norm");

    double last_applied_trace = -1e300;
    int last_cycle = 0, last_micro = -1;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split_csv(lines[k]);
        ASSERT_EQ(f.size(), 10u);
        const int cycle = std::stoi(f[0]);
        const int micro = std::stoi(f[1]);
        // append-ordered by (cycle, micro_index)
        const bool new_cycle = cycle != last_cycle;
        ASSERT_TRUE((new_cycle && cycle == last_cycle + 1 && micro == 0) || (!new_cycle && micro == last_micro + 1));
        last_cycle = cycle;
        last_micro = micro;
        // 1-based pivots, i < j
        const int pi = std::stoi(f[2]), pj = std::stoi(f[3]);
        ASSERT_GE(pi, 1);
        ASSERT_LT(pi, pj);
        ASSERT_LE(pj, 5);
        const int mode = std::stoi(f[4]);
        ASSERT_GE(mode, 1);
        ASSERT_LE(mode, 3);
        // trace non-decreasing over applied rows
        if (f[5] == "1") {
            const double tr = std::stod(f[6]);
            ASSERT_GE(tr, last_applied_trace - 1e-12);
            last_applied_trace = tr;
        } else {
            ASSERT_EQ(f[5], "0");
        }
    }
}

TEST(TelemetryCsv, SymmetricRunsUseModeZero)
{
    const auto gen = gen_sym_diagonalizable(3, 5, 91);
    const DecompositionResult res = run_sym(gen.tensor, SolverConfig{}, SymVariant::Full);
    std::ostringstream os;
    write_telemetry_csv(res, os);
    const auto lines = split_lines(os.str());
    for (std::size_t k = 1; k < lines.size(); ++k) ASSERT_EQ(split_csv(lines[k])[4], "0");
}

TEST(TelemetryCsv, SeventeenDigitRoundTrip)
{
    const auto gen = gen_orth_diagonalizable(3, 4, 92);
    SolverConfig cfg;
    cfg.max_cycles = 2;
    const DecompositionResult res = run_als(gen.tensor, cfg);
    std::ostringstream os;
    write_telemetry_csv(res, os);
    const auto lines = split_lines(os.str());
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto f = split_csv(lines[k]);
        ASSERT_EQ(std::stod(f[6]), res.telemetry[k - 1].trace); // exact round-trip
    }
}

TEST(SummaryJson, NamedKeysAndHistogram)
{
    const auto gen = gen_orth_diagonalizable(3, 5, 93);
    const DecompositionResult res = run_als(gen.tensor, SolverConfig{});
    const nlohmann::json j = summary_json(res);

    EXPECT_TRUE(j.contains("converged"));
    EXPECT_TRUE(j.contains("cycles"));
    EXPECT_TRUE(j.contains("final_trace"));
    EXPECT_TRUE(j.contains("final_rel_offnorm"));
    EXPECT_TRUE(j.contains("degenerate_skips"));
    EXPECT_TRUE(j.contains("micro_apply_histogram"));
    EXPECT_TRUE(j.contains("micro_apply_histogram_per_cycle"));

    EXPECT_EQ(j["converged"].get<bool>(), res.converged);
    EXPECT_EQ(j["cycles"].get<int>(), res.cycles);
    EXPECT_EQ(j["final_trace"].get<double>(), res.final_trace);

    const auto hist = j["micro_apply_histogram"].get<std::vector<long long>>();
    ASSERT_EQ(hist.size(), 4u); // 0..d applied microiterations
    long long total = 0;
    for (long long v : hist) total += v;
    EXPECT_EQ(total, static_cast<long long>(res.cycles) * (5 * 4 / 2));

    const auto per_cycle = j["micro_apply_histogram_per_cycle"];
    ASSERT_EQ(per_cycle.size(), static_cast<std::size_t>(res.cycles));
}

TEST(SummaryJson, StatusNames)
{
    EXPECT_STREQ(status_name(SolverStatus::Converged), "converged");
    EXPECT_STREQ(status_name(SolverStatus::CycleCapReached), "cycle_cap");
    EXPECT_STREQ(status_name(SolverStatus::DegenerateStall), "degenerate_stall");

    const DenseTensor a = gen_antisymmetric(3, 4, 94);
    const DecompositionResult res = run_als(a, SolverConfig{});
    const nlohmann::json j = summary_json(res);
    EXPECT_EQ(j["status"], "degenerate_stall");
    EXPECT_TRUE(j.contains("diagnostic"));
    EXPECT_EQ(j["degenerate_skips"].get<long long>(), 18);
}

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracemax/hosvd.hpp"
#include "tracemax/random_tensors.hpp"
#include "tracemax/solver.hpp"
#include "tracemax/telemetry.hpp"
#include "tracemax/tensor.hpp"

namespace {

using namespace tracemax;

struct TensorSource {
    std::string in_path;
    std::string gen_kind; // uniform | orth-diag | sym-diag | antisym
    int order = 3;
    int dim = 20;
    std::uint64_t seed = 1;
    std::string diag_range = "0,1";
};

std::pair<double, double> parse_diag_range(const std::string& s)
{
    std::string t = s;
    if (!t.empty() && t.front() == '[') t = t.substr(1);
    if (!t.empty() && t.back() == ']') t.pop_back();
    const auto comma = t.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--diag-range", "expected \"lo,hi\"");
    try {
        const double lo = std::stod(t.substr(0, comma));
        const double hi = std::stod(t.substr(comma + 1));
        if (!(lo < hi)) throw CLI::ValidationError("--diag-range", "need lo < hi");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--diag-range", "expected \"lo,hi\"");
    }
}

// Accepts the sweep literals "1/n", "1/(10n)", "1/(100n)", "1/(1000n)"
// (any positive integer multiplier works) or a plain decimal.
double parse_eta(const std::string& s, int n)
{
    if (s == "1/n") return 1.0 / n;
    if (s.rfind("1/(", 0) == 0 && s.size() > 5 && s.substr(s.size() - 2) == "n)") {
        const std::string k = s.substr(3, s.size() - 5);
        const double mult = std::stod(k);
        if (mult <= 0) throw CLI::ValidationError("--eta", "bad multiplier in " + s);
        return 1.0 / (mult * n);
    }
    return std::stod(s);
}

DenseTensor make_tensor(const TensorSource& src, std::vector<double>* true_diag)
{
    if (!src.in_path.empty()) return read_tns_file(src.in_path);
    const auto [lo, hi] = parse_diag_range(src.diag_range);
    if (src.gen_kind == "uniform") return gen_uniform(src.order, src.dim, src.seed);
    if (src.gen_kind == "orth-diag") {
        auto g = gen_orth_diagonalizable(src.order, src.dim, src.seed, lo, hi);
        if (true_diag) *true_diag = g.true_diagonal;
        return std::move(g.tensor);
    }
    if (src.gen_kind == "sym-diag") {
        auto g = gen_sym_diagonalizable(src.order, src.dim, src.seed, lo, hi);
        if (true_diag) *true_diag = g.true_diagonal;
        return std::move(g.tensor);
    }
    if (src.gen_kind == "antisym") return gen_antisymmetric(src.order, src.dim, src.seed);
    throw CLI::ValidationError("--gen", "unknown ensemble " + src.gen_kind);
}

void add_source_options(CLI::App* cmd, TensorSource& src, bool allow_file)
{
    if (allow_file) cmd->add_option("--in", src.in_path, "read the tensor from a TNS file");
    cmd->add_option("--gen", src.gen_kind, "generate the tensor: uniform | orth-diag | sym-diag | antisym");
    cmd->add_option("--order", src.order, "tensor order d (>= 3 for the solvers)");
    cmd->add_option("--dim", src.dim, "mode dimension n");
    cmd->add_option("--seed", src.seed, "RNG seed for generated tensors");
    cmd->add_option("--diag-range", src.diag_range, "diagonal range lo,hi for the diagonalizable ensembles");
}

int write_run_outputs(const DecompositionResult& res, const std::string& out_prefix)
{
    write_telemetry_csv_file(res, out_prefix + ".csv");
    std::ofstream js(out_prefix + ".json");
    if (!js) throw std::runtime_error("cannot open for writing: " + out_prefix + ".json");
    js << summary_json(res).dump(2) << '\n';
    std::cout << "status=" << status_name(res.status) << " cycles=" << res.cycles << std::setprecision(17)
              << " final_trace=" << res.final_trace << " final_rel_offnorm=" << res.final_rel_offnorm << '\n';
    if (res.status == SolverStatus::DegenerateStall) {
        std::cerr << "degenerate stall: " << res.diagnostic << '\n';
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Jacobi-type tensor-trace maximization: generators, solver runs, telemetry"};
    app.require_subcommand(1);

    // generate
    TensorSource gen_src;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "write a tensor ensemble draw to a TNS file");
    add_source_options(gen_cmd, gen_src, false);
    gen_cmd->add_option("--out", gen_out, "output TNS path")->required();
    gen_cmd->callback([&] {
        if (gen_src.gen_kind.empty()) throw CLI::ValidationError("--gen", "generate requires an ensemble");
        std::vector<double> diag;
        const DenseTensor t = make_tensor(gen_src, &diag);
        write_tns_file(t, gen_out);
        if (!diag.empty()) {
            std::ofstream ds(gen_out + ".diag");
            if (!ds) throw std::runtime_error("cannot open for writing: " + gen_out + ".diag");
            ds << std::setprecision(17);
            for (double v : diag) ds << v << '\n';
        }
        std::cout << "wrote " << gen_out << " (d=" << t.order() << " n=" << t.dim() << ")\n";
    });

    // run
    TensorSource run_src;
    std::string algo = "als", eta_str = "1/(100n)", init_str = "identity", run_out;
    double tol = 1e-4;
    int max_cycles = 200;
    auto* run_cmd = app.add_subcommand("run", "run a solver and write telemetry CSV + summary JSON");
    add_source_options(run_cmd, run_src, true);
    run_cmd->add_option("--algo", algo, "als | sym | sym-mode1");
    run_cmd->add_option("--eta", eta_str, "pivot gate strength: decimal or 1/n, 1/(10n), 1/(100n), 1/(1000n)");
    run_cmd->add_option("--tol", tol, "per-cycle trace-change stopping threshold");
    run_cmd->add_option("--max-cycles", max_cycles, "cycle cap");
    run_cmd->add_option("--init", init_str, "als initialization: identity | hosvd");
    run_cmd->add_option("--out", run_out, "output prefix (writes <out>.csv and <out>.json)")->required();
    int exit_code = 0;
    run_cmd->callback([&] {
        if (run_src.in_path.empty() == run_src.gen_kind.empty())
            throw CLI::ValidationError("--in/--gen", "exactly one tensor source is required");
        const DenseTensor a = make_tensor(run_src, nullptr);
        SolverConfig cfg;
        cfg.eta = parse_eta(eta_str, a.dim());
        cfg.tol = tol;
        cfg.max_cycles = max_cycles;
        cfg.seed = run_src.seed;
        if (init_str == "identity")
            cfg.init = InitStrategy::Identity;
        else if (init_str == "hosvd")
            cfg.init = InitStrategy::Hosvd;
        else
            throw CLI::ValidationError("--init", "expected identity or hosvd");
        DecompositionResult res;
        if (algo == "als")
            res = run_als(a, cfg);
        else if (algo == "sym")
            res = run_sym(a, cfg, SymVariant::Full);
        else if (algo == "sym-mode1")
            res = run_sym(a, cfg, SymVariant::Mode1);
        else
            throw CLI::ValidationError("--algo", "expected als, sym or sym-mode1");
        exit_code = write_run_outputs(res, run_out);
    });

    // compare-init
    TensorSource cmp_src;
    std::string cmp_eta = "1/(100n)", cmp_out;
    double cmp_tol = 1e-4;
    int cmp_cycles = 200;
    auto* cmp_cmd = app.add_subcommand("compare-init", "run ALS under identity and HOSVD initialization on the same tensor");
    add_source_options(cmp_cmd, cmp_src, true);
    cmp_cmd->add_option("--eta", cmp_eta, "pivot gate strength");
    cmp_cmd->add_option("--tol", cmp_tol, "stopping threshold");
    cmp_cmd->add_option("--max-cycles", cmp_cycles, "cycle cap");
    cmp_cmd->add_option("--out", cmp_out, "output prefix")->required();
    cmp_cmd->callback([&] {
        if (cmp_src.in_path.empty() == cmp_src.gen_kind.empty())
            throw CLI::ValidationError("--in/--gen", "exactly one tensor source is required");
        const DenseTensor a = make_tensor(cmp_src, nullptr);
        SolverConfig cfg;
        cfg.eta = parse_eta(cmp_eta, a.dim());
        cfg.tol = cmp_tol;
        cfg.max_cycles = cmp_cycles;
        cfg.seed = cmp_src.seed;

        nlohmann::json cmp;
        DecompositionResult results[2];
        const char* names[2] = {"identity", "hosvd"};
        const InitStrategy inits[2] = {InitStrategy::Identity, InitStrategy::Hosvd};
        for (int k = 0; k < 2; ++k) {
            cfg.init = inits[k];
            results[k] = run_als(a, cfg);
            write_telemetry_csv_file(results[k], cmp_out + "_" + names[k] + ".csv");
            nlohmann::json side;
            side["starting_trace"] = results[k].initial_trace;
            side["starting_rel_offnorm"] = results[k].initial_rel_offnorm;
            side["final_trace"] = results[k].final_trace;
            side["final_rel_offnorm"] = results[k].final_rel_offnorm;
            side["converged"] = results[k].converged;
            side["status"] = status_name(results[k].status);
            side["cycles"] = results[k].cycles;
            cmp[names[k]] = side;
        }
        std::ofstream js(cmp_out + "_compare.json");
        if (!js) throw std::runtime_error("cannot open for writing: " + cmp_out + "_compare.json");
        js << cmp.dump(2) << '\n';
        std::cout << "identity: start=" << results[0].initial_trace << " final=" << results[0].final_trace
                  << " | hosvd: start=" << results[1].initial_trace << " final=" << results[1].final_trace << '\n';
        for (const auto& r : results) {
            if (r.status == SolverStatus::DegenerateStall) {
                std::cerr << "degenerate stall: " << r.diagnostic << '\n';
                exit_code = 3;
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}

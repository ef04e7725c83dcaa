// mmax: upper confidence bounds for the largest unseen prevalence in
// incidence data, plus the simulation sweeps that exercise them.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mmax/commands.hpp"
#include "mmax/error.hpp"

namespace {

using namespace mmax;
using namespace mmax::cli;

constexpr int kUsageError = 2;
constexpr int kDataError = 3;

const std::map<std::string, IncidenceFormat> kFormats{
    {"dense", IncidenceFormat::dense}, {"sparse", IncidenceFormat::sparse}, {"counts", IncidenceFormat::counts}};

const std::map<std::string, PrevalenceKind> kSimScenarios{
    {"zipf", PrevalenceKind::zipf}, {"geometric", PrevalenceKind::geometric}, {"homogeneous", PrevalenceKind::homogeneous}};

const std::map<std::string, PrevalenceKind> kAllScenarios{{"zipf", PrevalenceKind::zipf},
                                                          {"geometric", PrevalenceKind::geometric},
                                                          {"homogeneous", PrevalenceKind::homogeneous},
                                                          {"truncated-geometric", PrevalenceKind::truncated_geometric}};

// Writes to a buffer first so a failing command leaves no partial file.
void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
    if (!out) throw DataError("write failed for '" + path + "'");
}

template <class T>
std::optional<T> flag(CLI::Option* opt, const T& value) {
    return opt->count() ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Upper confidence bounds on the largest prevalence among unseen categories (M_max).\n"
        "All logarithms are natural logarithms."};
    app.require_subcommand(1);
    app.set_version_flag("--version", "mmax 0.1.0");

    // bound
    BoundOptions bound;
    std::string bound_input;
    Count bound_M = 0, bound_n = 0;
    double bound_delta = 0.0;
    auto* sc_bound = app.add_subcommand("bound", "Compute an upper bound for M_max on an incidence file (JSON to stdout)");
    sc_bound->add_option("--input", bound_input, "Incidence file")->required()->check(CLI::ExistingFile);
    sc_bound->add_option("--format", bound.format, "dense | sparse | counts")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    sc_bound->add_option("--method", bound.method, "bonferroni | worstcase | bounded | unbounded | auto")
        ->check(CLI::IsMember({"bonferroni", "worstcase", "bounded", "unbounded", "auto"}))
        ->capture_default_str();
    sc_bound->add_option("--alpha", bound.alpha, "Miscoverage level")->capture_default_str();
    auto* o_delta = sc_bound->add_option("--delta", bound_delta, "Concentration slack for the bounded bound (default 0.01*alpha)");
    sc_bound->add_option("--beta", bound.beta, "Level spent on the total-mass bound")->capture_default_str();
    auto* o_bM = sc_bound->add_option("--M", bound_M, "Alphabet size (required by bonferroni, worstcase, bounded)");
    auto* o_bn = sc_bound->add_option("--n", bound_n, "Number of sampling units (counts format)");

    // simulate-intervals
    IntervalOptions iv;
    std::string iv_scenario = "zipf", iv_out;
    std::vector<Count> iv_n, iv_M;
    auto* sc_iv = app.add_subcommand("simulate-intervals", "Per-replicate bounds under a simulated prevalence model (CSV)");
    sc_iv->add_option("--scenario", iv_scenario, "zipf | geometric | homogeneous")
        ->check(CLI::IsMember(kSimScenarios))
        ->capture_default_str();
    sc_iv->add_option("--param", iv.param, "gamma (zipf), a (geometric) or c (homogeneous)")->capture_default_str();
    auto* o_ivn = sc_iv->add_option("--n", iv_n, "Sample size")->expected(1);
    auto* o_ivng = sc_iv->add_option("--n-grid", iv_n, "Sample sizes")->delimiter(',');
    auto* o_ivM = sc_iv->add_option("--M", iv_M, "Alphabet size")->expected(1);
    auto* o_ivMg = sc_iv->add_option("--M-grid", iv_M, "Alphabet sizes")->delimiter(',');
    o_ivn->excludes(o_ivng);
    o_ivM->excludes(o_ivMg);
    sc_iv->add_option("--reps", iv.reps, "Replicates per grid point")->capture_default_str();
    sc_iv->add_option("--alpha", iv.alpha)->capture_default_str();
    sc_iv->add_option("--seed", iv.seed)->capture_default_str();
    sc_iv->add_option("--threads", iv.threads, "Worker threads (0 = all cores)");
    sc_iv->add_option("--out", iv_out, "Output CSV")->required();

    // compare-regimes
    RegimeOptions rg;
    std::string rg_out;
    auto* sc_rg = app.add_subcommand("compare-regimes", "Bounded vs unbounded sweep and the M-overshoot sweep (CSV)");
    sc_rg->add_option("--n", rg.n)->capture_default_str();
    sc_rg->add_option("--M", rg.M)->capture_default_str();
    sc_rg->add_option("--alpha", rg.alpha)->capture_default_str();
    sc_rg->add_option("--reps", rg.reps)->capture_default_str();
    sc_rg->add_option("--seed", rg.seed)->capture_default_str();
    sc_rg->add_option("--m-add", rg.m_add, "Extra categories declared in the overshoot sweep")->delimiter(',');
    sc_rg->add_option("--threads", rg.threads, "Worker threads (0 = all cores)");
    sc_rg->add_option("--out", rg_out, "Output CSV")->required();

    // simulate-stopping
    StoppingOptions st;
    std::string st_out;
    auto* sc_st = app.add_subcommand("simulate-stopping", "Sequential stopping rules under contamination (CSV)");
    sc_st->add_option("--epsilon", st.epsilon, "Prevalence threshold")->capture_default_str();
    sc_st->add_option("--alpha", st.alpha)->capture_default_str();
    sc_st->add_option("--coverage-target", st.coverage_target)->capture_default_str();
    sc_st->add_option("--reps", st.reps)->capture_default_str();
    sc_st->add_option("--n-max", st.n_max)->capture_default_str();
    sc_st->add_option("--M", st.M)->capture_default_str();
    sc_st->add_option("--q", st.qs, "Contamination rates")->delimiter(',');
    sc_st->add_option("--seed", st.seed)->capture_default_str();
    sc_st->add_option("--threads", st.threads, "Worker threads (0 = all cores)");
    sc_st->add_option("--out", st_out, "Output CSV")->required();

    // diagnose
    DiagnoseOptions dg;
    std::string dg_input, dg_out;
    Count dg_M = 0, dg_n = 0;
    auto* sc_dg = app.add_subcommand("diagnose", "Accumulation curve, coverage and regime recommendation");
    sc_dg->add_option("--input", dg_input)->required()->check(CLI::ExistingFile);
    sc_dg->add_option("--format", dg.format, "dense | sparse | counts")
        ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
    auto* o_dM = sc_dg->add_option("--M", dg_M, "Alphabet size");
    auto* o_dn = sc_dg->add_option("--n", dg_n, "Number of sampling units (counts format)");
    sc_dg->add_option("--alpha", dg.alpha)->capture_default_str();
    sc_dg->add_option("--perms", dg.perms, "Random unit orderings for the accumulation curve")->capture_default_str();
    sc_dg->add_option("--seed", dg.seed)->capture_default_str();
    sc_dg->add_option("--out", dg_out, "Accumulation-curve CSV (k,mean_distinct)");

    // generate
    GenerateOptions gen;
    std::string gen_out, gen_scenario = "zipf";
    auto* sc_gen = app.add_subcommand("generate", "Simulate a dense incidence matrix");
    sc_gen->add_option("--scenario", gen_scenario, "zipf | geometric | homogeneous | truncated-geometric")
        ->check(CLI::IsMember(kAllScenarios))
        ->capture_default_str();
    sc_gen->add_option("--param", gen.param)->capture_default_str();
    sc_gen->add_option("--M", gen.M)->capture_default_str();
    sc_gen->add_option("--n", gen.n)->capture_default_str();
    sc_gen->add_option("--q", gen.q, "Singleton-error contamination rate")->capture_default_str();
    sc_gen->add_option("--seed", gen.seed)->capture_default_str();
    sc_gen->add_option("--out", gen_out, "Output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*sc_bound) {
            bound.input = bound_input;
            bound.M = flag(o_bM, bound_M);
            bound.n = flag(o_bn, bound_n);
            bound.delta = flag(o_delta, bound_delta);
            std::cout << cmd_bound(bound) << '\n';
        } else if (*sc_iv) {
            if (iv_n.empty() || iv_M.empty()) throw DomainError("both n (--n/--n-grid) and M (--M/--M-grid) are required");
            if (iv_n.size() > 1 && iv_M.size() > 1) throw DomainError("exactly one of n and M may vary");
            iv.scenario = kSimScenarios.at(iv_scenario);
            iv.n_grid = iv_n;
            iv.M_grid = iv_M;
            std::ostringstream csv;
            cmd_simulate_intervals(iv, csv);
            write_file(iv_out, csv.str());
        } else if (*sc_rg) {
            std::ostringstream csv;
            cmd_compare_regimes(rg, csv);
            write_file(rg_out, csv.str());
        } else if (*sc_st) {
            std::ostringstream csv;
            cmd_simulate_stopping(st, csv);
            write_file(st_out, csv.str());
        } else if (*sc_dg) {
            dg.input = dg_input;
            dg.M = flag(o_dM, dg_M);
            dg.n = flag(o_dn, dg_n);
            const DiagnoseResult res = cmd_diagnose(dg);
            if (!dg_out.empty()) {
                std::ostringstream csv;
                write_curve_csv(csv, res.curve);
                write_file(dg_out, csv.str());
            }
            std::cout << res.json << '\n';
        } else if (*sc_gen) {
            gen.scenario = kAllScenarios.at(gen_scenario);
            std::ostringstream csv;
            write_dense(csv, cmd_generate(gen));
            write_file(gen_out, csv.str());
        }
    } catch (const DataError& e) {
        std::cerr << "mmax: data error: " << e.what() << '\n';
        return kDataError;
    } catch (const DomainError& e) {
        std::cerr << "mmax: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "mmax: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

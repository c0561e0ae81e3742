// affine-hsp: batch front end for the affine-group hidden-subgroup toolkit.
// Subcommands: simulate (sampled trials), verify (invariant suites),
// numbers (totient / Fermat / scan reports).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "affinehsp/affine_group.hpp"
#include "affinehsp/errors.hpp"
#include "affinehsp/finite_field.hpp"
#include "affinehsp/hsp_pipeline.hpp"
#include "affinehsp/number_theory.hpp"
#include "affinehsp/rng.hpp"
#include "affinehsp/verify.hpp"

using nlohmann::json;
using namespace affinehsp;

namespace {

constexpr int kSchemaVersion = 1;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(out_path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
    if (text.empty() || text.back() != '\n') os << '\n';
}

json counts_json(const StageCounts& c) {
    return {{"mult_qft", c.mult_qft}, {"add_qft", c.add_qft}, {"oracle_calls", c.oracle_calls}};
}

json trial_json(const TrialReport& r) {
    json j{
        {"trial_index", r.trial_index},
        {"coset_label", r.coset_label},
        {"coset_witness_a", r.coset_witness.a},
        {"coset_witness_b", r.coset_witness.b},
        {"measured_k", r.measured_k},
        {"candidate_v", r.candidate_v},
        {"recovered_b", r.recovered_b},
        {"success", r.success},
        {"attempts", r.attempts},
        {"retries", r.retries},
        {"coset_probability", r.coset_probability},
        {"k_probability", r.k_probability},
        {"v_probability", r.v_probability},
        {"counts", counts_json(r.counts)},
    };
    if (!r.subroutine_traces.empty()) {
        json traces = json::array();
        for (const auto& t : r.subroutine_traces) {
            traces.push_back({{"m", t.m},
                              {"z", t.z},
                              {"gcd", t.gcd},
                              {"invertible", t.invertible},
                              {"m_inverse", t.m_inverse}});
        }
        j["subroutine_traces"] = std::move(traces);
    }
    return j;
}

struct SimulateConfig {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string tk = "diagonal";
    double epsilon = 0.05;
    std::optional<std::uint32_t> hidden_b;
    int max_attempts = 0;  // 0: derive from epsilon in dlog mode, 1 otherwise
    bool full_records = false;
    unsigned jobs = 1;
    std::string out;
};

int cmd_simulate(const SimulateConfig& cfg) {
    Field f = Field::build(cfg.p, cfg.n);
    AffineGroup grp(f);
    Pipeline pipe(f, grp);
    const std::uint32_t q = f.q();

    TkMode mode = cfg.tk == "dlog" ? TkMode::DlogSubroutine : TkMode::Diagonal;
    int max_attempts = cfg.max_attempts;
    if (max_attempts <= 0) {
        max_attempts = mode == TkMode::DlogSubroutine ? nt::retry_budget(q - 1, cfg.epsilon) : 1;
    }
    Field::Elem hidden =
        cfg.hidden_b ? static_cast<Field::Elem>(*cfg.hidden_b % q)
                     : static_cast<Field::Elem>(Rng(cfg.seed ^ 0xA5A5A5A5DEADBEEFull).next_below(q));
    HiddenOracle oracle = HiddenOracle::make(grp, hidden, cfg.seed);

    std::vector<TrialReport> reports(cfg.trials);
    const unsigned jobs = std::max(1u, cfg.jobs);
    auto worker = [&](unsigned w) {
        for (std::uint64_t i = w; i < cfg.trials; i += jobs) {
            reports[i] = pipe.run_trial(oracle, cfg.seed, i, mode, max_attempts);
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }

    std::uint64_t successes = 0, total_attempts = 0;
    StageCounts totals;
    for (const auto& r : reports) {
        successes += r.success ? 1 : 0;
        total_attempts += static_cast<std::uint64_t>(r.attempts);
        totals.mult_qft += r.counts.mult_qft;
        totals.add_qft += r.counts.add_qft;
        totals.oracle_calls += r.counts.oracle_calls;
    }

    json j{
        {"schema_version", kSchemaVersion},
        {"command", "simulate"},
        {"config",
         {{"p", cfg.p},
          {"n", cfg.n},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"tk", cfg.tk},
          {"epsilon", cfg.epsilon},
          {"hidden_b", hidden},
          {"max_attempts", max_attempts},
          {"jobs", cfg.jobs}}},
        {"field", f.describe()},
        {"results",
         {{"successes", successes},
          {"empirical_success", cfg.trials ? double(successes) / double(cfg.trials) : 0.0},
          {"mean_attempts", cfg.trials ? double(total_attempts) / double(cfg.trials) : 0.0},
          {"total_counts", counts_json(totals)}}},
    };
    if (q <= 16) {
        j["results"]["exact_success_single_attempt"] = pipe.exact_success_probability(oracle);
    }
    if (cfg.full_records) {
        json records = json::array();
        for (const auto& r : reports) records.push_back(trial_json(r));
        j["trials"] = std::move(records);
    }
    emit(j.dump(2), cfg.out);
    return 0;
}

struct VerifyConfig {
    std::uint32_t p = 2;
    std::uint32_t n = 3;
    std::uint64_t seed = 1;
    std::string inject_fault;
    std::string out;
};

int cmd_verify(const VerifyConfig& cfg) {
    Field f = Field::build(cfg.p, cfg.n);
    std::vector<CheckResult> checks;

    if (cfg.inject_fault == "modulus") {
        // Corrupt the leading coefficient; irreducibility must now fail.
        std::vector<std::uint32_t> bad = f.modulus();
        bad.back() = 0;
        bool irreducible = Field::is_irreducible(cfg.p, bad);
        // Either way this run reports a failure: the corrupted modulus was
        // rejected (the injected fault, working as intended) or, worse, it
        // slipped through the check.
        checks.push_back({"modulus irreducibility (fault injected)", false,
                          irreducible ? "corrupted modulus passed the check"
                                      : "corrupted modulus rejected"});
    } else if (!cfg.inject_fault.empty()) {
        throw std::invalid_argument("unknown fault target: " + cfg.inject_fault);
    } else {
        checks = run_verification(f, cfg.seed);
    }

    bool all_pass = true;
    json rows = json::array();
    for (const auto& c : checks) {
        all_pass = all_pass && c.pass;
        rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::cerr << (c.pass ? "[pass] " : "[FAIL] ") << c.name
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
    }
    json j{{"schema_version", kSchemaVersion},
           {"command", "verify"},
           {"config", {{"p", cfg.p}, {"n", cfg.n}, {"seed", cfg.seed}}},
           {"field", f.describe()},
           {"all_pass", all_pass},
           {"checks", std::move(rows)}};
    emit(j.dump(2), cfg.out);
    return all_pass ? 0 : 1;
}

struct NumbersConfig {
    int fermat = -1;
    std::uint64_t totient = 0;
    std::uint32_t scan_p = 0;
    std::uint32_t max_n = 31;
    std::string format = "json";
    std::string out;
};

int cmd_numbers(const NumbersConfig& cfg) {
    if (cfg.scan_p != 0 && cfg.format == "csv") {
        emit(nt::scan_csv(nt::prime_power_scan(cfg.scan_p, cfg.max_n)), cfg.out);
        return 0;
    }
    json j{{"schema_version", kSchemaVersion}, {"command", "numbers"}};
    if (cfg.totient != 0) {
        nt::TotientReport r = nt::totient_report(cfg.totient);
        j["totient"] = {{"n", r.n},
                        {"factorization", r.factorization.to_string()},
                        {"phi", r.phi},
                        {"ratio", r.ratio},
                        {"bound_applicable", r.bound_applicable}};
        if (r.bound_applicable) j["totient"]["hardy_wright_bound"] = r.hardy_wright_bound;
    }
    if (cfg.fermat >= 0) {
        nt::FermatProduct fp = nt::fermat_product(cfg.fermat);
        j["fermat"] = {
            {"max_index", fp.max_index},
            {"primes", fp.primes},
            {"prime_divisor_product", fp.prime_divisor_product},
            {"idealized_product", fp.idealized_product},
            {"note",
             "truncated product over known prime divisors of F_0..F_N; the commonly quoted "
             ".4997 differs from the computed value"},
        };
    }
    if (cfg.scan_p != 0) {
        json rows = json::array();
        for (const auto& r : nt::prime_power_scan(cfg.scan_p, cfg.max_n)) {
            rows.push_back({{"n", r.n},
                            {"q_minus_1", r.q_minus_1},
                            {"factorization", r.factorization.to_string()},
                            {"ratio", r.ratio},
                            {"bound", r.bound},
                            {"ratio_at_least_bound", r.ratio_at_least_bound},
                            {"structural_ok", r.structural_ok}});
        }
        j["scan"] = {{"p", cfg.scan_p}, {"max_n", cfg.max_n}, {"rows", std::move(rows)}};
    }
    emit(j.dump(2), cfg.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and verification toolkit for the hidden-subgroup "
                 "algorithm on the affine group of GF(p^n)"};
    app.require_subcommand(1);

    SimulateConfig sim;
    auto* s = app.add_subcommand("simulate", "run sampled pipeline trials");
    s->add_option("--p", sim.p, "field characteristic (prime)")->required();
    s->add_option("--n", sim.n, "extension degree");
    s->add_option("--trials", sim.trials, "number of independent trials");
    s->add_option("--seed", sim.seed, "master seed");
    s->add_option("--tk", sim.tk, "phase oracle: diagonal | dlog")
        ->check(CLI::IsMember({"diagonal", "dlog"}));
    s->add_option("--epsilon", sim.epsilon, "target failure probability (dlog retry budget)");
    std::uint32_t hidden_b_opt = 0;
    auto* hb = s->add_option("--hidden-b", hidden_b_opt, "hidden subgroup parameter b");
    s->add_option("--max-attempts", sim.max_attempts, "override the per-trial retry budget");
    s->add_flag("--full-records", sim.full_records, "include per-trial records in the report");
    s->add_option("--jobs", sim.jobs, "worker threads");
    s->add_option("--out", sim.out, "report path (default: stdout)");

    VerifyConfig ver;
    auto* v = app.add_subcommand("verify", "run the invariant suites");
    v->add_option("--p", ver.p, "field characteristic (prime)")->required();
    v->add_option("--n", ver.n, "extension degree");
    v->add_option("--seed", ver.seed, "seed for sampled sub-checks");
    v->add_option("--inject-fault", ver.inject_fault, "corrupt a component (modulus)")
        ->check(CLI::IsMember({"modulus"}));
    v->add_option("--out", ver.out, "report path (default: stdout)");

    NumbersConfig num;
    auto* nsub = app.add_subcommand("numbers", "totient / Fermat / scan reports");
    nsub->add_option("--fermat", num.fermat, "Fermat product through index N (0..6)");
    nsub->add_option("--totient", num.totient, "totient report for one n");
    nsub->add_option("--scan-p", num.scan_p, "scan phi(p^n-1)/(p^n-1) over prime n");
    nsub->add_option("--max-n", num.max_n, "scan exponent cap");
    nsub->add_option("--format", num.format, "json | csv (csv: scan only)")
        ->check(CLI::IsMember({"json", "csv"}));
    nsub->add_option("--out", num.out, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (s->parsed()) {
            if (hb->count() > 0) sim.hidden_b = hidden_b_opt;
            return cmd_simulate(sim);
        }
        if (v->parsed()) return cmd_verify(ver);
        return cmd_numbers(num);
    } catch (const NotPrime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    }
}

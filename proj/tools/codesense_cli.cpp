// codesense: deterministic experiments with code-based bipolar sensing matrices.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "codesense/bounds.hpp"
#include "codesense/codeanalysis.hpp"
#include "codesense/ensemble.hpp"
#include "codesense/errors.hpp"
#include "codesense/gf2.hpp"
#include "codesense/oracle.hpp"
#include "codesense/sensing.hpp"
#include "codesense/version.hpp"

namespace {

using codesense::BinaryMatrix;
using codesense::CompactSensingMatrix;
using codesense::Rational;
using nlohmann::json;

struct MatrixSource {
    std::string in_path;
    std::size_t p = 0;
    std::size_t r = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t index = 0;

    void add_options(CLI::App* cmd, bool require_seed = true) {
        cmd->add_option("--in", in_path, "input gf2-matrix/v1 JSON file for H");
        cmd->add_option("--p", p, "block length p");
        cmd->add_option("--r", r, "parity rows r");
        auto* s = cmd->add_option("--seed", seed, "sampling seed (required when no --in)");
        cmd->add_option("--index", index, "trial index for counter-based sampling");
        if (!require_seed) s->description("sampling seed");
    }

    BinaryMatrix load(json& echo) const {
        if (!in_path.empty()) {
            std::ifstream in(in_path);
            if (!in) throw codesense::DomainError("cannot open " + in_path);
            json j = json::parse(in);
            echo["in"] = in_path;
            return BinaryMatrix::from_json(j);
        }
        if (p == 0 || r == 0) throw codesense::DomainError("need --in or --p/--r");
        if (!seed) throw codesense::DomainError("randomized runs require an explicit --seed");
        echo["p"] = p;
        echo["r"] = r;
        echo["seed"] = *seed;
        echo["index"] = index;
        codesense::EnsembleSpec spec{p, r, *seed, 1, codesense::EnsembleMode::MonteCarlo};
        return codesense::sample(spec, index);
    }
};

json report_shell(const std::string& command) {
    json j;
    j["version"] = codesense::kVersion;
    j["command"] = command;
    j["config"] = json::object();
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw codesense::DomainError("cannot open " + path + " for writing");
    out << data;
}

CompactSensingMatrix load_sensing(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw codesense::DomainError("cannot open " + path);
    return CompactSensingMatrix::from_json(json::parse(in));
}

std::vector<double> random_sparse_signal(std::uint64_t m, std::size_t sparsity,
                                         std::mt19937_64& rng) {
    std::vector<double> e(m, 0.0);
    std::vector<std::uint64_t> pool(m);
    for (std::uint64_t j = 0; j < m; ++j) pool[j] = j;
    for (std::size_t i = 0; i < sparsity; ++i) {
        std::uniform_int_distribution<std::uint64_t> pick(i, m - 1);
        std::swap(pool[i], pool[pick(rng)]);
        e[pool[i]] = (rng() & 1) ? 1.0 : -1.0;
    }
    return e;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"code-based bipolar sensing matrices: construction, certificates, bounds"};
    app.set_version_flag("--version", codesense::kVersion);
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker parallelism (default: CODESENSE_THREADS or all)");

    // --- sample ---
    auto* sample_cmd = app.add_subcommand("sample", "draw H from the random ensemble");
    std::size_t sp = 0, sr = 0;
    std::uint64_t sseed = 0, sindex = 0;
    std::string sout;
    sample_cmd->add_option("--p", sp, "block length")->required();
    sample_cmd->add_option("--r", sr, "parity rows")->required();
    sample_cmd->add_option("--seed", sseed, "seed")->required();
    sample_cmd->add_option("--index", sindex, "trial index");
    sample_cmd->add_option("--out", sout, "write gf2-matrix/v1 JSON here");

    // --- build ---
    auto* build_cmd = app.add_subcommand("build", "construct the compact sensing matrix");
    MatrixSource build_src;
    build_src.add_options(build_cmd);
    std::string bout, bbin;
    build_cmd->add_option("--out", bout, "write codesense/v1 JSON here");
    build_cmd->add_option("--bin", bbin, "write compact binary serialization here");

    // --- analyze ---
    auto* analyze_cmd = app.add_subcommand("analyze", "weight distribution and exact incoherence");
    MatrixSource analyze_src;
    analyze_src.add_options(analyze_cmd);
    bool analyze_large = false;
    analyze_cmd->add_flag("--allow-large", analyze_large, "override the 2^k enumeration guard");

    // --- certify ---
    auto* certify_cmd = app.add_subcommand("certify", "weight-band incoherence certificate");
    MatrixSource certify_src;
    certify_src.add_options(certify_cmd);
    std::string cert_eps = "0.5";
    bool certify_large = false;
    certify_cmd->add_option("--epsilon", cert_eps, "band parameter as a decimal string")->required();
    certify_cmd->add_flag("--allow-large", certify_large, "override the 2^k enumeration guard");

    // --- bounds ---
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form ensemble and threshold bounds");
    std::int64_t bp = 0, br = 0;
    std::string bounds_eps = "0.5";
    bounds_cmd->add_option("--p", bp, "block length")->required();
    bounds_cmd->add_option("--r", br, "parity rows")->required();
    bounds_cmd->add_option("--epsilon", bounds_eps, "band parameter")->required();

    // --- ensemble ---
    auto* ens_cmd = app.add_subcommand("ensemble", "exhaustive or Monte-Carlo ensemble probabilities");
    std::size_t ep = 0, er = 0;
    std::string ens_eps = "0.5", ens_mode = "mc", ens_csv;
    std::uint64_t ens_seed = 0, ens_trials = 0;
    bool ens_large = false;
    ens_cmd->add_option("--p", ep, "block length")->required();
    ens_cmd->add_option("--r", er, "parity rows")->required();
    ens_cmd->add_option("--epsilon", ens_eps, "band parameter")->required();
    ens_cmd->add_option("--mode", ens_mode, "mc or exhaustive")
        ->check(CLI::IsMember({"mc", "exhaustive"}));
    ens_cmd->add_option("--seed", ens_seed, "seed (required for mc)");
    ens_cmd->add_option("--trials", ens_trials, "trial count (mc)");
    ens_cmd->add_option("--csv", ens_csv, "dump one K value per trial to this CSV file");
    ens_cmd->add_flag("--allow-large", ens_large, "override the r*p <= 20 exhaustive guard");

    // --- rip-exact ---
    auto* rip_cmd = app.add_subcommand("rip-exact", "exact RIP constant by subset scan");
    std::string rip_in;
    MatrixSource rip_src;
    std::size_t rip_order = 2;
    bool rip_large = false;
    rip_cmd->add_option("--matrix", rip_in, "codesense/v1 JSON file");
    rip_src.add_options(rip_cmd);
    rip_cmd->add_option("--order", rip_order, "RIP order S")->required();
    rip_cmd->add_flag("--allow-large", rip_large, "override the subset-scan guard");

    // --- recover ---
    auto* rec_cmd = app.add_subcommand("recover", "l1 recovery trials against the sparse oracle");
    std::string rec_in, rec_signal;
    MatrixSource rec_src;
    std::size_t rec_sparsity = 1;
    std::uint64_t rec_seed = 0, rec_trials = 1;
    bool rec_oracle = false;
    rec_cmd->add_option("--matrix", rec_in, "codesense/v1 JSON file");
    rec_src.add_options(rec_cmd);
    rec_cmd->add_option("--sparsity", rec_sparsity, "S for random sparse signals");
    rec_cmd->add_option("--signal", rec_signal, "JSON array file with an explicit signal e");
    rec_cmd->add_option("--trials", rec_trials, "number of random signals");
    auto* rec_seed_opt = rec_cmd->add_option("--signal-seed", rec_seed, "seed for random signals");
    rec_cmd->add_flag("--oracle", rec_oracle, "cross-check with the exhaustive support oracle");

    // --- exponents ---
    auto* exp_cmd = app.add_subcommand("exponents", "finite-size exponent table (regime check)");
    std::string exp_eps = "0.5", exp_alpha = "0.5", exp_format = "json";
    std::vector<std::size_t> exp_plist;
    std::uint64_t exp_seed = 0, exp_trials = 0;
    exp_cmd->add_option("--epsilon", exp_eps, "band parameter")->required();
    exp_cmd->add_option("--alpha", exp_alpha, "rate r/p as a decimal string")->required();
    exp_cmd->add_option("--p-list", exp_plist, "block lengths")->required()->delimiter(',');
    exp_cmd->add_option("--seed", exp_seed, "seed")->required();
    exp_cmd->add_option("--trials", exp_trials, "trials per block length")->required();
    exp_cmd->add_option("--format", exp_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads == 0) {
        if (const char* env = std::getenv("CODESENSE_THREADS")) threads = std::atoi(env);
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*sample_cmd) {
            codesense::EnsembleSpec spec{sp, sr, sseed, 1, codesense::EnsembleMode::MonteCarlo};
            BinaryMatrix h = codesense::sample(spec, sindex);
            json rep = report_shell("sample");
            rep["config"] = {{"p", sp}, {"r", sr}, {"seed", sseed}, {"index", sindex}};
            rep["matrix"] = h.to_json();
            if (!sout.empty()) write_file(sout, h.to_json().dump(2) + "\n");
            emit(rep);
        } else if (*build_cmd) {
            json rep = report_shell("build");
            BinaryMatrix h = build_src.load(rep["config"]);
            auto sm = CompactSensingMatrix::build(h);
            rep["sensing"] = sm.to_json();
            auto bytes = sm.serialize();
            rep["serialized_bytes"] = bytes.size();
            if (!bout.empty()) write_file(bout, sm.to_json().dump(2) + "\n");
            if (!bbin.empty())
                write_file(bbin, std::string(bytes.begin(), bytes.end()));
            emit(rep);
        } else if (*analyze_cmd) {
            json rep = report_shell("analyze");
            BinaryMatrix h = analyze_src.load(rep["config"]);
            BinaryMatrix g = codesense::generator_from_parity_check(h);
            auto dist = codesense::weight_distribution(g, analyze_large);
            rep["k"] = g.rows();
            rep["rank_h"] = h.cols() - g.rows();
            rep["weight_distribution"] = dist.counts;
            rep["mu_exact"] = codesense::mu_exact_from_weights(dist);
            emit(rep);
        } else if (*certify_cmd) {
            json rep = report_shell("certify");
            rep["config"]["epsilon"] = cert_eps;
            BinaryMatrix h = certify_src.load(rep["config"]);
            BinaryMatrix g = codesense::generator_from_parity_check(h);
            auto cert =
                codesense::incoherence_certificate(g, codesense::parse_rational(cert_eps),
                                                   certify_large);
            rep["certificate"] = cert.to_json();
            emit(rep);
        } else if (*bounds_cmd) {
            json rep = report_shell("bounds");
            rep["config"] = {{"p", bp}, {"r", br}, {"epsilon", bounds_eps}};
            auto br_rep =
                codesense::make_bound_report(bp, br, codesense::parse_rational(bounds_eps));
            rep.update(br_rep.to_json());
            emit(rep);
        } else if (*ens_cmd) {
            json rep = report_shell("ensemble");
            rep["config"] = {{"p", ep}, {"r", er}, {"epsilon", ens_eps}, {"mode", ens_mode},
                             {"seed", ens_seed}, {"trials", ens_trials}};
            codesense::EnsembleSpec spec{ep, er, ens_seed, ens_trials,
                                         ens_mode == "exhaustive"
                                             ? codesense::EnsembleMode::Exhaustive
                                             : codesense::EnsembleMode::MonteCarlo};
            Rational eps = codesense::parse_rational(ens_eps);
            auto erep = codesense::estimate_prob_k_zero(spec, eps, ens_large);
            rep.update(erep.to_json());
            if (!ens_csv.empty() && spec.mode == codesense::EnsembleMode::MonteCarlo) {
                auto ks = codesense::per_trial_k(spec, eps);
                std::string csv = "trial,k_epsilon\n";
                for (std::size_t i = 0; i < ks.size(); ++i)
                    csv += std::to_string(i) + "," + std::to_string(ks[i]) + "\n";
                write_file(ens_csv, csv);
            }
            emit(rep);
        } else if (*rip_cmd) {
            json rep = report_shell("rip-exact");
            rep["config"]["order"] = rip_order;
            CompactSensingMatrix sm =
                !rip_in.empty() ? load_sensing(rip_in)
                                : CompactSensingMatrix::build(rip_src.load(rep["config"]));
            if (!rip_in.empty()) rep["config"]["matrix"] = rip_in;
            auto rip = codesense::exact_rip_constant(sm, rip_order, rip_large);
            rep.update(rip.to_json());
            rep["mu_exact"] = codesense::exact_incoherence(sm);
            emit(rep);
        } else if (*rec_cmd) {
            json rep = report_shell("recover");
            rep["config"] = {{"sparsity", rec_sparsity}, {"trials", rec_trials}};
            CompactSensingMatrix sm =
                !rec_in.empty() ? load_sensing(rec_in)
                                : CompactSensingMatrix::build(rec_src.load(rep["config"]));
            if (!rec_in.empty()) rep["config"]["matrix"] = rec_in;
            std::vector<std::vector<double>> signals;
            if (!rec_signal.empty()) {
                std::ifstream in(rec_signal);
                if (!in) throw codesense::DomainError("cannot open " + rec_signal);
                signals.push_back(json::parse(in).get<std::vector<double>>());
                rep["config"]["signal"] = rec_signal;
            } else {
                if (rec_seed_opt->count() == 0)
                    throw codesense::DomainError("random signals require --signal-seed");
                rep["config"]["signal_seed"] = rec_seed;
                std::mt19937_64 rng(rec_seed);
                for (std::uint64_t t = 0; t < rec_trials; ++t)
                    signals.push_back(random_sparse_signal(sm.m(), rec_sparsity, rng));
            }
            json trials = json::array();
            for (const auto& e : signals) {
                auto prob = codesense::make_recovery_problem(sm, e);
                auto result = codesense::basis_pursuit(prob);
                double err = 0.0, norm = 0.0;
                for (std::size_t j = 0; j < e.size(); ++j) {
                    err += (result.solution[j] - e[j]) * (result.solution[j] - e[j]);
                    norm += e[j] * e[j];
                }
                json t;
                t["relative_l2_error"] = norm > 0 ? std::sqrt(err / norm) : std::sqrt(err);
                t["iterations"] = result.status.iterations;
                t["feasibility_residual"] = result.status.feasibility_residual;
                t["converged"] = result.status.converged;
                if (rec_oracle) {
                    auto oracle_sol = codesense::exhaustive_sparse_oracle(prob, rec_sparsity);
                    double diff = 0.0;
                    for (std::size_t j = 0; j < e.size(); ++j)
                        diff += (oracle_sol[j] - result.solution[j]) *
                                (oracle_sol[j] - result.solution[j]);
                    t["oracle_l2_gap"] = std::sqrt(diff);
                }
                trials.push_back(t);
            }
            rep["trials"] = trials;
            emit(rep);
        } else if (*exp_cmd) {
            json rep = report_shell("exponents");
            rep["config"] = {{"epsilon", exp_eps}, {"alpha", exp_alpha},
                             {"p_list", exp_plist}, {"seed", exp_seed}, {"trials", exp_trials}};
            auto rows = codesense::finite_size_exponents(
                codesense::parse_rational(exp_eps), codesense::parse_rational(exp_alpha),
                exp_plist, exp_seed, exp_trials);
            if (exp_format == "csv") {
                std::cout << "p,r,trials,k_zero_count,exponent_k_zero,exponent_k_nonzero,"
                             "f1_bound,f2_bound\n";
                for (const auto& row : rows)
                    std::cout << row.p << "," << row.r << "," << row.trials << ","
                              << row.k_zero_count << ","
                              << (row.insufficient_k_zero ? "" : std::to_string(row.exponent_k_zero))
                              << ","
                              << (row.insufficient_k_nonzero
                                      ? ""
                                      : std::to_string(row.exponent_k_nonzero))
                              << "," << row.f1_bound << "," << row.f2_bound << "\n";
            } else {
                json table = json::array();
                for (const auto& row : rows) {
                    json jr = {{"p", row.p},
                               {"r", row.r},
                               {"trials", row.trials},
                               {"k_zero_count", row.k_zero_count},
                               {"f1_bound", row.f1_bound},
                               {"f2_bound", row.f2_bound}};
                    if (row.insufficient_k_zero)
                        jr["exponent_k_zero"] = nullptr;
                    else
                        jr["exponent_k_zero"] = row.exponent_k_zero;
                    if (row.insufficient_k_nonzero)
                        jr["exponent_k_nonzero"] = nullptr;
                    else
                        jr["exponent_k_nonzero"] = row.exponent_k_nonzero;
                    table.push_back(jr);
                }
                rep["rows"] = table;
                emit(rep);
                return 0;
            }
        }
    } catch (const codesense::AssumptionViolated& e) {
        std::cerr << "assumption violated: " << e.what() << "\n";
        return 1;
    } catch (const codesense::DegenerateCode& e) {
        std::cerr << "degenerate code: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

// ozkit-cli — batch front door: corpus generation, defect measurement,
// inequality verification suites, decomposition runs, ζ tables.
//
// Exit codes: 0 all checks pass, 2 at least one check failed, 1 usage or
// input error.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ozkit/decompose.hpp"
#include "ozkit/report.hpp"
#include "ozkit/suites.hpp"

namespace {

int default_workers() {
    if (const char* env = std::getenv("OZKIT_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

void emit(const std::vector<ozkit::CheckReport>& rows, const std::string& out_path, const std::string& format,
          bool quiet) {
    std::string payload;
    if (format == "csv")
        payload = ozkit::report_file_csv(rows);
    else
        payload = ozkit::report_file_json(rows).dump(1, '\t') + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        ozkit::write_text_file(out_path, payload);
        if (!quiet) {
            int failures = 0;
            for (const auto& r : rows)
                if (!r.pass) ++failures;
            std::cout << rows.size() << " checks, " << failures << " failures -> " << out_path << "\n";
        }
    }
}

bool any_failure(const std::vector<ozkit::CheckReport>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return true;
    return false;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for approximately order-zero maps between finite-dimensional C*-algebras"};
    app.require_subcommand(1);

    // ---- corpus gen ----
    auto* corpus_cmd = app.add_subcommand("corpus", "corpus management");
    corpus_cmd->require_subcommand(1);
    auto* gen = corpus_cmd->add_subcommand("gen", "generate a seeded random corpus");
    std::string gen_out = "corpus.json";
    std::uint64_t gen_seed = 1;
    ozkit::CorpusSpec spec;
    gen->add_option("--out", gen_out, "output path");
    gen->add_option("--seed", gen_seed, "corpus seed");
    gen->add_option("--exact", spec.n_exact, "exact order-zero maps");
    gen->add_option("--jordan", spec.n_jordan, "Jordan *-homomorphisms");
    gen->add_option("--perturbed", spec.n_perturbed, "self-adjoint perturbed maps");
    gen->add_option("--positive", spec.n_positive_perturbed, "positive perturbed maps");
    gen->add_option("--eps-lo", spec.eps_lo, "smallest certified defect");
    gen->add_option("--eps-hi", spec.eps_hi, "largest certified defect");

    // ---- defect ----
    auto* defect_cmd = app.add_subcommand("defect", "measure defects over a corpus");
    std::string defect_corpus, defect_out, defect_kind = "all", defect_format = "json";
    std::uint64_t defect_seed = 1;
    int defect_restarts = 8;
    defect_cmd->add_option("--corpus", defect_corpus, "corpus path")->required();
    defect_cmd->add_option("--kind", defect_kind, "oz | sa | jordan | all");
    defect_cmd->add_option("--seed", defect_seed, "estimator seed");
    defect_cmd->add_option("--budget", defect_restarts, "search restarts");
    defect_cmd->add_option("--out", defect_out, "report path (stdout if omitted)");
    defect_cmd->add_option("--format", defect_format, "json | csv");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run an inequality verification suite");
    std::string verify_suite = "all", verify_corpus, verify_out, verify_format = "json";
    ozkit::SuiteConfig cfg;
    cfg.workers = default_workers();
    verify_cmd->add_option("--suite", verify_suite, "s2 | s3 | s5 | s6 | s7 | s8 | all");
    verify_cmd->add_option("--corpus", verify_corpus, "corpus path")->required();
    verify_cmd->add_option("--seed", cfg.seed, "suite seed");
    verify_cmd->add_option("--eps-k", cfg.K, "hereditary-range constant K (default: calibrated)");
    verify_cmd->add_option("--gamma", cfg.gamma, "spectral-cut exponent");
    verify_cmd->add_option("--pairs", cfg.pairs_each, "orthogonal pairs per map");
    verify_cmd->add_option("--samples", cfg.samples_each, "elements per map");
    verify_cmd->add_option("--tail-cutoff", cfg.zeta_tail, "series truncation for ζ");
    verify_cmd->add_option("--workers", cfg.workers, "worker threads");
    verify_cmd->add_option("--out", verify_out, "report path (stdout if omitted)");
    verify_cmd->add_option("--format", verify_format, "json | csv");

    // ---- decompose ----
    auto* dec_cmd = app.add_subcommand("decompose", "decompose one corpus map");
    std::string dec_corpus, dec_out, dec_format = "json";
    int dec_index = 0;
    double dec_K = 1.0, dec_gamma = 5.0 / 16.0, dec_theta = -1.0, dec_eps = -1.0;
    dec_cmd->add_option("--corpus", dec_corpus, "corpus path")->required();
    dec_cmd->add_option("--index", dec_index, "entry index");
    dec_cmd->add_option("--eps", dec_eps, "defect bound (default: certified entry value)");
    dec_cmd->add_option("--K", dec_K, "hereditary-range constant");
    dec_cmd->add_option("--gamma", dec_gamma, "spectral-cut exponent");
    dec_cmd->add_option("--theta", dec_theta, "corner-exponent slack (default: automatic)");
    dec_cmd->add_option("--out", dec_out, "report path (stdout if omitted)");
    dec_cmd->add_option("--format", dec_format, "json | csv");

    // ---- zeta-table ----
    auto* zt_cmd = app.add_subcommand("zeta-table", "tabulate the error function on a log grid");
    std::string zt_grid = "1e-12:1e-3", zt_out;
    int zt_points = 19;
    long zt_tail = 1'000'000;
    zt_cmd->add_option("--grid", zt_grid, "range lo:hi");
    zt_cmd->add_option("--points", zt_points, "grid points");
    zt_cmd->add_option("--tail-cutoff", zt_tail, "series truncation");
    zt_cmd->add_option("--out", zt_out, "CSV path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const ozkit::Corpus corpus = ozkit::gen_random_corpus(spec, gen_seed);
            ozkit::save_corpus(corpus, gen_out);
            std::cout << corpus.entries.size() << " entries -> " << gen_out << "\n";
            return 0;
        }
        if (defect_cmd->parsed()) {
            const ozkit::Corpus corpus = ozkit::load_corpus(defect_corpus);
            std::vector<ozkit::CheckReport> rows;
            const ozkit::SearchBudget budget{defect_restarts, 60};
            for (size_t i = 0; i < corpus.entries.size(); ++i) {
                const auto& e = corpus.entries[i];
                const std::uint64_t s = defect_seed ^ (0xd0ULL + i);
                auto push = [&](const char* label, double value) {
                    ozkit::CheckReport r;
                    r.inequality_id = std::string("defect.") + label + "." + std::to_string(i);
                    r.lhs = value;
                    r.rhs = e.planted_eps ? *e.planted_eps : std::numeric_limits<double>::infinity();
                    r.margin = r.rhs - r.lhs;
                    r.pass = !e.planted_eps || r.margin >= -1e-9 * std::max(1.0, r.rhs);
                    rows.push_back(std::move(r));
                };
                if (defect_kind == "oz" || defect_kind == "all")
                    push("oz", ozkit::oz_defect(e.map, budget, s).value);
                if (defect_kind == "sa" || defect_kind == "all")
                    push("sa", ozkit::sa_defect(e.map, budget, s).value);
                if (defect_kind == "jordan" || defect_kind == "all")
                    push("jordan", ozkit::jordan_defect(e.map, budget, s).value);
            }
            emit(rows, defect_out, defect_format, false);
            return any_failure(rows) ? 2 : 0;
        }
        if (verify_cmd->parsed()) {
            const ozkit::Corpus corpus = ozkit::load_corpus(verify_corpus);
            const auto rows = ozkit::run_suite(verify_suite, corpus, cfg);
            emit(rows, verify_out, verify_format, false);
            return any_failure(rows) ? 2 : 0;
        }
        if (dec_cmd->parsed()) {
            const ozkit::Corpus corpus = ozkit::load_corpus(dec_corpus);
            if (dec_index < 0 || dec_index >= static_cast<int>(corpus.entries.size()))
                throw ozkit::DomainError("decompose: entry index out of range");
            const auto& e = corpus.entries[static_cast<size_t>(dec_index)];
            double eps = dec_eps;
            if (eps <= 0.0) {
                if (!e.planted_eps) throw ozkit::DomainError("decompose: no certified defect; pass --eps");
                eps = *e.planted_eps;
            }
            const bool positive = e.has_tag("positive");
            const ozkit::DecompositionResult res = ozkit::decompose(e.map, eps, dec_K, positive, dec_theta, dec_gamma);
            auto rows = ozkit::verify_decomposition(res, e.map, eps);
            ozkit::CheckReport info;
            info.inequality_id = "decomp.branch." + ozkit::branch_name(res.branch);
            info.lhs = res.beta;
            info.rhs = res.gamma;
            info.margin = 0.0;
            info.pass = true;
            info.note = "lhs = beta, rhs = gamma";
            rows.insert(rows.begin(), std::move(info));
            emit(rows, dec_out, dec_format, false);
            return any_failure(rows) ? 2 : 0;
        }
        if (zt_cmd->parsed()) {
            const auto colon = zt_grid.find(':');
            if (colon == std::string::npos) throw ozkit::DomainError("zeta-table: grid must be lo:hi");
            const double lo = std::stod(zt_grid.substr(0, colon));
            const double hi = std::stod(zt_grid.substr(colon + 1));
            if (!(lo > 0.0 && hi > lo)) throw ozkit::DomainError("zeta-table: need 0 < lo < hi");
            if (zt_points < 2) throw ozkit::DomainError("zeta-table: need at least 2 points");
            ozkit::ZetaParams zp;
            zp.tail_cutoff = zt_tail;
            std::ostringstream csv;
            csv << "s,zeta,ratio_s116\n";
            for (int i = 0; i < zt_points; ++i) {
                const double t = static_cast<double>(i) / (zt_points - 1);
                const double s = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
                const double z = ozkit::zeta(s, zp);
                csv << ozkit::format_double(s) << ',' << ozkit::format_double(z) << ','
                    << ozkit::format_double(z / std::pow(s, 1.0 / 16.0)) << '\n';
            }
            if (zt_out.empty())
                std::cout << csv.str();
            else
                ozkit::write_text_file(zt_out, csv.str());
            return 0;
        }
    } catch (const ozkit::Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 1;
}

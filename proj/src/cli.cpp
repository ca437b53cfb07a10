#include "starcodim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "starcodim/analysis.hpp"
#include "starcodim/families.hpp"
#include "starcodim/io.hpp"

namespace starcodim {

namespace {

struct CommonConfig {
    std::string family = "at";
    std::vector<int> T, N, M;
    int n_max = 5;
    int n_min = 1;
    std::string basis_mode = "full";
    std::string rank = "exact";
    std::string format = "csv";
    std::string out_path;
    int jobs = 1;
};

ComputeOptions compute_options(const CommonConfig& c) {
    ComputeOptions o;
    o.basis_mode = c.basis_mode == "left-normed" ? BasisMode::LeftNormed : BasisMode::Full;
    o.rank_method = c.rank == "modular" ? RankMethod::ModularChecked : RankMethod::Exact;
    o.degree_cap = degree_cap_from_env();
    o.jobs = c.jobs;
    return o;
}

struct Selected {
    AlgebraPtr algebra;
    int T = 0;  // the (first) chain parameter, for the bound checks
    bool is_at = false;
};

Selected resolve_family(const CommonConfig& c) {
    auto need = [](bool cond, const std::string& msg) {
        if (!cond) throw StructuralError(msg);
    };
    Selected s;
    if (c.family == "at") {
        need(c.T.size() == 1, "--family at needs exactly one --T");
        need(c.N.empty() && c.M.empty(), "--family at takes no --N/--M");
        s.algebra = make_A_T(c.T[0]);
        s.T = c.T[0];
        s.is_at = true;
    } else if (c.family == "tilde") {
        need(c.T.size() == 1, "--family tilde needs exactly one --T");
        need(c.N.empty() && c.M.size() <= 1, "--family tilde takes --M only");
        s.algebra = make_tilde_slice(c.T[0], c.M.empty() ? 2 : c.M[0]);
        s.T = c.T[0];
    } else if (c.family == "b") {
        need(c.T.size() == 1 && c.N.size() == 1, "--family b needs one --T and one --N");
        need(c.M.size() <= 1, "--family b takes at most one --M");
        s.algebra = make_B_slice(c.T[0], c.N[0], c.M.empty() ? 2 : c.M[0]);
        s.T = c.T[0];
    } else if (c.family == "c-prefix") {
        need(!c.T.empty() && c.T.size() == c.N.size(),
             "--family c-prefix pairs each --T with one --N");
        BlockSchedule sched;
        for (size_t i = 0; i < c.T.size(); ++i)
            sched.blocks.emplace_back(Integer(c.T[i]), Integer(c.N[i]));
        std::vector<int> sizes;
        if (c.M.empty())
            sizes.assign(c.T.size(), 2);
        else if (c.M.size() == 1)
            sizes.assign(c.T.size(), c.M[0]);
        else {
            need(c.M.size() == c.T.size(), "--M takes one value, or one per block");
            sizes = c.M;
        }
        s.algebra = make_C_prefix(sched, sizes);
        s.T = c.T[0];
    } else {
        throw StructuralError("unknown family '" + c.family + "'");
    }
    return s;
}

void with_sink(const std::string& path, std::ostream& fallback,
               const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream f(path);
    if (!f) throw StructuralError("cannot open output file '" + path + "'");
    fn(f);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

// Aligned text table; rows[0] is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> w;
    for (const auto& r : rows) {
        if (w.size() < r.size()) w.resize(r.size(), 0);
        for (size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    }
    std::ostringstream out;
    for (const auto& r : rows) {
        for (size_t c = 0; c < r.size(); ++c) {
            out << r[c];
            if (c + 1 < r.size()) out << std::string(w[c] - r[c].size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

int run_codim(const CommonConfig& cfg, std::ostream& out) {
    const Selected sel = resolve_family(cfg);
    EvalContext ctx(sel.algebra);
    const CodimSequence seq = codim_sequence(ctx, cfg.n_max, compute_options(cfg));
    std::vector<std::vector<std::string>> rows{
        {"n", "k", "m", "c_km", "binom", "contribution", "c_n"}};
    for (const auto& tc : seq.by_degree)
        for (const auto& cell : tc.cells) {
            if (tc.n < cfg.n_min) continue;
            const Integer b = binomial(static_cast<unsigned long>(tc.n),
                                       static_cast<unsigned long>(cell.k));
            rows.push_back({std::to_string(tc.n), std::to_string(cell.k), std::to_string(cell.m),
                            std::to_string(cell.value), b.get_str(),
                            Integer(b * cell.value).get_str(), tc.total.get_str()});
        }
    with_sink(cfg.out_path, out, [&](std::ostream& os) {
        if (cfg.format == "table") {
            os << text_table(rows);
        } else {
            for (const auto& r : rows) {
                for (size_t c = 0; c < r.size(); ++c) os << r[c] << (c + 1 < r.size() ? "," : "");
                os << "\n";
            }
        }
    });
    return 0;
}

BoundReport subset_report(const EvalContext& A, const EvalContext& S, int degree_cap,
                          const ComputeOptions& opts, const std::string& fwd_name,
                          const std::string& bwd_name) {
    BoundReport rep{"identity-containment", {}};
    for (int n = 1; n <= degree_cap; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto label = "(k=" + std::to_string(k) + ",m=" + std::to_string(n - k) + ")";
            const SubsetCheck fwd = identity_subset_check(A, S, k, n - k, opts);
            rep.rows.push_back(BoundRow{fwd_name + label, n, fwd.contained ? "yes" : "no", "yes",
                                        fwd.contained ? "pass" : "fail", "NA"});
            const SubsetCheck bwd = identity_subset_check(S, A, k, n - k, opts);
            rep.rows.push_back(BoundRow{bwd_name + label, n, bwd.contained ? "yes" : "no", "yes",
                                        bwd.contained ? "pass" : "fail", "NA"});
        }
    return rep;
}

int run_verify(const CommonConfig& cfg, const std::string& suite, std::ostream& out,
               std::ostream& err) {
    const Selected sel = resolve_family(cfg);
    EvalContext ctx(sel.algebra);
    const ComputeOptions opts = compute_options(cfg);
    std::vector<std::string> suites;
    if (suite == "all") {
        if (sel.is_at)
            suites = {"theorem1", "lemma1", "lemma4", "lemma6", "sandwich", "lemma8", "lemma11"};
        else
            suites = {"theorem1", "lemma11"};
    } else {
        suites = {suite};
    }
    std::optional<CodimSequence> seq;
    auto sequence = [&]() -> const CodimSequence& {
        if (!seq) seq = codim_sequence(ctx, cfg.n_max, opts);
        return *seq;
    };
    auto need_at = [&](const std::string& s) {
        if (!sel.is_at)
            throw StructuralError("suite '" + s + "' applies to --family at only");
    };
    BoundReport combined{"verify", {}};
    for (const auto& s : suites) {
        BoundReport r;
        if (s == "theorem1") {
            r = check_dimension_envelope(sel.algebra->dim(), sequence());
        } else if (s == "lemma1") {
            need_at(s);
            r = check_cubic_envelope(sequence(), sel.T);
        } else if (s == "lemma4") {
            need_at(s);
            r = check_support(sequence(), sel.T);
        } else if (s == "lemma6") {
            need_at(s);
            r = check_cell_cap(sequence(), sel.T);
        } else if (s == "sandwich") {
            need_at(s);
            r = check_sandwich(sequence(), sel.T);
        } else if (s == "lemma8") {
            need_at(s);
            const int M = cfg.M.empty() ? 2 : cfg.M[0];
            EvalContext slice(make_tilde_slice(sel.T, M));
            // full transfer range is degree 2T; honor --n-max so the cost
            // stays under the caller's control (rows state what ran)
            r = subset_report(ctx, slice, std::min(2 * sel.T, cfg.n_max), opts,
                              "subset(at->tilde)", "subset(tilde->at)");
        } else if (s == "lemma11") {
            r = check_stepwise_growth(sequence());
        } else {
            throw StructuralError("unknown suite '" + s + "'");
        }
        combined.rows.insert(combined.rows.end(), r.rows.begin(), r.rows.end());
    }
    with_sink(cfg.out_path, out, [&](std::ostream& os) {
        os << (cfg.format == "table" ? to_table(combined) : to_csv(combined));
    });
    const bool ok = combined.all_pass();
    err << "verify: " << (ok ? "PASS" : "FAIL") << " (" << combined.rows.size() << " rows)\n";
    return ok ? 0 : 1;
}

int run_exponent(const CommonConfig& cfg, std::ostream& out) {
    const Selected sel = resolve_family(cfg);
    EvalContext ctx(sel.algebra);
    const CodimSequence seq = codim_sequence(ctx, cfg.n_max, compute_options(cfg));
    const ExponentWindowEstimate w = window_estimate(seq, cfg.n_min, cfg.n_max);
    with_sink(cfg.out_path, out, [&](std::ostream& os) {
        if (sel.is_at) {
            const ExponentConstants ec = exponent_constants(sel.T);
            os << "# theta = " << to_string(ec.theta) << ", beta in [" << ec.beta_lo << ", "
               << ec.beta_hi << "]\n";
        }
        os << "# window " << w.lo << ".." << w.hi << " min_root=" << w.min_root
           << " max_root=" << w.max_root << "\n";
        if (cfg.format == "table") {
            std::vector<std::vector<std::string>> rows{{"n", "root"}};
            for (const auto& [n, root] : w.roots) rows.push_back({std::to_string(n), root});
            os << text_table(rows);
        } else {
            os << to_csv(w);
        }
    });
    return 0;
}

void print_schedule_steps(const std::vector<ScheduleStep>& steps, const std::string& format,
                          std::ostream& os) {
    if (format == "csv") {
        os << "index,T,N,m,crossing,rule\n";
        for (const auto& st : steps)
            os << st.index << "," << integer_brief(st.T) << "," << integer_brief(st.N) << ","
               << integer_brief(st.chain_m) << "," << integer_brief(st.crossing) << ","
               << csv_quote(st.rule) << "\n";
    } else {
        for (const auto& st : steps)
            os << "step " << st.index << ": T = " << integer_brief(st.T)
               << ", N = " << integer_brief(st.N) << "\n    " << st.rule << "\n";
    }
}

int run_schedule(const CommonConfig& cfg, const std::string& alpha_str, const std::string& mode,
                 int horizon, int steps, std::ostream& out, std::ostream& err) {
    const Rational alpha = parse_rational(alpha_str);
    GreedyOptions g;
    g.mode = mode == "bound" ? ScheduleMode::Bound : ScheduleMode::Computed;
    g.blocks = steps;
    g.horizon = horizon;
    g.first_T = cfg.T.empty() ? 2 : cfg.T[0];
    g.compute = compute_options(cfg);
    try {
        const GreedyResult res = greedy_schedule(alpha, g);
        with_sink(cfg.out_path, out, [&](std::ostream& os) {
            if (cfg.format != "csv")
                os << "# schedule alpha = " << to_string(alpha) << ", mode = " << mode << "\n";
            print_schedule_steps(res.steps, cfg.format, os);
            if (cfg.format != "csv") {
                os << "blocks:";
                for (const auto& [T, N] : res.schedule.blocks)
                    os << " (" << integer_brief(T) << ", " << integer_brief(N) << ")";
                os << "\n";
            }
        });
        return 0;
    } catch (const IncompleteError& e) {
        with_sink(cfg.out_path, out, [&](std::ostream& os) {
            print_schedule_steps(e.steps, cfg.format, os);
        });
        err << "incomplete: " << e.what() << "\n";
        return 3;
    }
}

int run_validate(const std::string& path, std::ostream& out) {
    const AlgebraPtr a = load_algebra_file(path);
    const auto issues = validate(*a);
    if (issues.empty()) {
        out << "valid: " << a->name() << " (dim " << a->dim() << ")\n";
        return 0;
    }
    for (const auto& issue : issues) out << "invalid: " << issue.message << "\n";
    return 1;
}

int run_emit(const CommonConfig& cfg, std::ostream& out) {
    const Selected sel = resolve_family(cfg);
    with_sink(cfg.out_path, out, [&](std::ostream& os) { os << algebra_to_string(*sel.algebra); });
    return 0;
}

struct WitnessConfig {
    std::string family = "at";
    int T = 2, M = 3, chains = 1, tail = 0, m = 2;
    std::string check_path, out_path;
};

int run_witness(const WitnessConfig& wc, std::ostream& out) {
    AlgebraPtr a;
    if (wc.family == "at")
        a = make_A_T(wc.T);
    else if (wc.family == "tilde")
        a = make_tilde_slice(wc.T, wc.M);
    else
        throw StructuralError("witness families are 'at' and 'tilde'");
    if (!wc.check_path.empty()) {
        std::ifstream f(wc.check_path);
        if (!f) throw StructuralError("cannot open certificate '" + wc.check_path + "'");
        const WitnessCertificate cert = load_certificate(f, *a, wc.check_path);
        EvalContext ctx(a);
        const CertificateCheck res = verify_certificate(ctx, cert);
        out << "certificate: declared rank " << cert.rank << ", recomputed " << res.recomputed
            << " -> " << (res.ok ? "ok" : "mismatch") << "\n";
        return res.ok ? 0 : 1;
    }
    const WitnessCertificate cert = wc.family == "at"
                                        ? chain_witness(wc.T, wc.chains, wc.tail)
                                        : factorial_witness(wc.T, wc.M, wc.m, wc.tail);
    out << "witness: algebra = " << cert.algebra_name << ", cell = (" << cert.k << ", " << cert.m
        << "), rows = " << cert.monomials.size() << ", assignments = " << cert.assignments.size()
        << ", rank = " << cert.rank << "\n";
    if (!wc.out_path.empty()) {
        std::ofstream f(wc.out_path);
        if (!f) throw StructuralError("cannot open output file '" + wc.out_path + "'");
        save_certificate(cert, *a, f);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact partial/total *-codimension engine for algebras with involution"};
    app.name("starcodim");
    app.require_subcommand(1);

    CommonConfig cfg;
    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "at | tilde | b | c-prefix")
            ->default_str("at");
        sub->add_option("--T", cfg.T, "chain parameter(s), one per block for c-prefix");
        sub->add_option("--N", cfg.N, "nilpotency order(s) for b / c-prefix");
        sub->add_option("--M", cfg.M, "slice width(s) for tilde / b / c-prefix");
    };
    auto add_compute = [&](CLI::App* sub) {
        sub->add_option("--basis-mode", cfg.basis_mode, "full | left-normed")
            ->check(CLI::IsMember({"full", "left-normed"}));
        sub->add_option("--rank", cfg.rank, "exact | modular")
            ->check(CLI::IsMember({"exact", "modular"}));
        sub->add_option("--jobs", cfg.jobs, "worker threads (output is identical at any width)")
            ->check(CLI::PositiveNumber);
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv | table")
            ->check(CLI::IsMember({"csv", "table"}));
        sub->add_option("--out", cfg.out_path, "write to this file instead of stdout");
    };

    int code = 0;

    auto* c_codim = app.add_subcommand("codim", "partial and total codimension table");
    add_family(c_codim);
    add_compute(c_codim);
    add_output(c_codim);
    c_codim->add_option("--n-max", cfg.n_max, "highest degree")->required();
    c_codim->add_option("--n-min", cfg.n_min, "lowest degree printed (default 1)");
    c_codim->callback([&] { code = run_codim(cfg, out); });

    std::string suite = "all";
    auto* c_verify = app.add_subcommand("verify", "run bound/containment suites");
    add_family(c_verify);
    add_compute(c_verify);
    add_output(c_verify);
    c_verify->add_option("--n-max", cfg.n_max, "highest degree (default 5)");
    c_verify->add_option(
        "--suite", suite,
        "theorem1 | lemma1 | lemma4 | lemma6 | sandwich | lemma8 | lemma11 | all");
    c_verify->callback([&] { code = run_verify(cfg, suite, out, err); });

    auto* c_exp = app.add_subcommand("exponent", "finite-window n-th-root estimates");
    add_family(c_exp);
    add_compute(c_exp);
    add_output(c_exp);
    c_exp->add_option("--n-max", cfg.n_max, "window end")->required();
    c_exp->add_option("--n-min", cfg.n_min, "window start (default 1)");
    c_exp->callback([&] { code = run_exponent(cfg, out); });

    std::string alpha_str, mode = "computed";
    int horizon = 6, steps = 2;
    auto* c_sched = app.add_subcommand("schedule", "block interleaving search for a growth target");
    c_sched->add_option("--alpha", alpha_str, "growth target, a rational > 1 (e.g. 2 or 41/20)")
        ->required();
    c_sched->add_option("--mode", mode, "computed | bound")
        ->check(CLI::IsMember({"computed", "bound"}));
    c_sched->add_option("--horizon", horizon, "computed mode: highest degree probed");
    c_sched->add_option("--steps", steps, "number of blocks to derive");
    c_sched->add_option("--T", cfg.T, "computed mode: starting chain parameter (default 2)");
    cfg.basis_mode = "full";
    c_sched->add_option("--basis-mode", cfg.basis_mode, "probe basis (default left-normed)");
    c_sched->add_option("--rank", cfg.rank, "exact | modular");
    c_sched->add_option("--jobs", cfg.jobs, "worker threads");
    add_output(c_sched);
    c_sched->callback([&] {
        if (!c_sched->count("--basis-mode")) cfg.basis_mode = "left-normed";
        code = run_schedule(cfg, alpha_str, mode, horizon, steps, out, err);
    });

    std::string validate_path;
    auto* c_val = app.add_subcommand("validate", "check an algebra definition file");
    c_val->add_option("file", validate_path, "algebra definition file")->required();
    c_val->callback([&] { code = run_validate(validate_path, out); });

    auto* c_emit = app.add_subcommand("emit", "write a family as an algebra definition file");
    add_family(c_emit);
    add_output(c_emit);
    c_emit->callback([&] { code = run_emit(cfg, out); });

    WitnessConfig wc;
    auto* c_wit = app.add_subcommand("witness", "rank lower-bound certificates");
    c_wit->add_option("--family", wc.family, "at (chain word) | tilde (factorial family)");
    c_wit->add_option("--T", wc.T, "chain parameter");
    c_wit->add_option("--M", wc.M, "slice width (tilde)");
    c_wit->add_option("--chains", wc.chains, "number of completed chain traversals (at)");
    c_wit->add_option("--tail", wc.tail, "trailing skew factors, 0..2T");
    c_wit->add_option("--m", wc.m, "permutation size (tilde), rank target m!");
    c_wit->add_option("--check", wc.check_path, "verify this saved certificate instead");
    c_wit->add_option("--out", wc.out_path, "save the certificate here");
    c_wit->callback([&] { code = run_witness(wc, out); });

    std::vector<const char*> argv;
    argv.push_back("starcodim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    } catch (const IncompleteError& e) {
        err << "incomplete: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace starcodim

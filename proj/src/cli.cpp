#include "gvlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gvlab/codes.hpp"
#include "gvlab/curves.hpp"
#include "gvlab/errors.hpp"
#include "gvlab/indicator.hpp"
#include "gvlab/roots.hpp"
#include "gvlab/util.hpp"

namespace gvlab {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        raise(ErrorCode::DomainError, "cannot open output file '" + path + "'");
    f << content;
}

CheckMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        raise(ErrorCode::ParseError, "cannot open matrix file '" + path + "'");
    return read_matrix_text(f);
}

std::vector<FieldElement> parse_vector(const FieldSpec& f, const std::string& text) {
    std::vector<FieldElement> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok)
        out.push_back(parse_element_token(f, tok));
    return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

struct CommonOpts {
    uint32_t p = 2;
    uint32_t m = 1;
    uint64_t budget = 0;
    unsigned workers = 1;
    uint64_t seed = 1;
    std::string out_path;
    std::string format = "text";
};

// The acceptance grid for the indicator equivalence harness.
constexpr std::pair<uint32_t, uint32_t> kVerifyGrid[] = {
    {3, 1}, {3, 2}, {4, 2}, {4, 3}, {5, 2}};

} // namespace

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"gvlab: bounds laboratory for linear codes over small fields"};
    app.require_subcommand(1);

    CommonOpts opt;
    uint32_t n = 0, r = 0, d = 0, q = 2, wmax = 0, samples_u32 = 11;
    uint64_t mc_samples = 100000, count = 10000;
    double tol = 1e-12;
    std::string matrix_path, poly_text, mode = "exhaustive", row_text;
    std::optional<uint32_t> n_finite, opt_n, opt_r, opt_d;
    std::optional<uint64_t> opt_samples;
    bool exhaustive_flag = false;

    int exit_code = 0;
    std::function<void()> action;

    const auto add_field_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "field characteristic (prime)")->capture_default_str();
        cmd->add_option("--m", opt.m, "extension degree")->capture_default_str();
    };
    const auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
    };
    const auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--budget", opt.budget,
                        "enumeration budget override (also GVLAB_BUDGET)");
    };

    // distance ------------------------------------------------------------
    {
        auto* c = app.add_subcommand("distance", "exact minimum distance of a check matrix");
        c->add_option("--matrix", matrix_path, "matrix file")->required();
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const CheckMatrix H = load_matrix(matrix_path);
                const CodeSummary s = min_distance(H, opt.budget);
                ordered_json j{{"n", s.n}, {"k", s.k},       {"rate", s.rate},
                               {"d_min", s.d_min}, {"delta", s.delta}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // oracle-distance -------------------------------------------------------
    {
        auto* c = app.add_subcommand("oracle-distance",
                                     "minimum distance by generator enumeration");
        c->add_option("--matrix", matrix_path, "generator matrix file")->required();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const CheckMatrix G = load_matrix(matrix_path);
                ordered_json j{{"d_min", min_distance_oracle(G)}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // gv-construct ----------------------------------------------------------
    {
        auto* c = app.add_subcommand("gv-construct", "greedy distance-d check matrix");
        c->add_option("--n", n, "block length")->required();
        c->add_option("--d", d, "target minimum distance")->required();
        add_field_opts(c);
        c->add_option("--format", opt.format, "text|json")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto field = FieldSpec::make_shared(opt.p, opt.m);
                const CheckMatrix H = gv_greedy_construct(n, d, field);
                if (opt.format == "json") {
                    ordered_json rows = ordered_json::array();
                    for (const auto& row : H.rows) {
                        ordered_json jr = ordered_json::array();
                        for (FieldElement e : row) jr.push_back(element_token(H.f(), e));
                        rows.push_back(jr);
                    }
                    ordered_json j{{"p", opt.p}, {"m", opt.m}, {"n", H.n},
                                   {"r", H.r},   {"rows", rows}};
                    write_output(opt.out_path, dump(j));
                } else {
                    std::ostringstream ss;
                    write_matrix_text(ss, H);
                    write_output(opt.out_path, ss.str());
                }
            };
        });
    }

    // enumerate ---------------------------------------------------------------
    {
        auto* c = app.add_subcommand("enumerate", "all vectors of weight 1..wmax");
        c->add_option("--n", n, "vector length")->required();
        c->add_option("--wmax", wmax, "maximum weight")->required();
        add_field_opts(c);
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto field = FieldSpec::make_shared(opt.p, opt.m);
                LowWeightEnumerator en(n, 1, wmax, field, opt.budget);
                std::ostringstream ss;
                std::vector<FieldElement> v(n);
                while (en.next(v)) {
                    for (uint32_t i = 0; i < n; ++i) {
                        if (i) ss << " ";
                        ss << element_token(*field, v[i]);
                    }
                    ss << "\n";
                }
                write_output(opt.out_path, ss.str());
            };
        });
    }

    // indicator ------------------------------------------------------------
    {
        auto* c = app.add_subcommand("indicator",
                                     "character-sum indicator product for one matrix");
        c->add_option("--matrix", matrix_path, "matrix file")->required();
        c->add_option("--d", d, "target distance")->required();
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const CheckMatrix H = load_matrix(matrix_path);
                const IndicatorReport rep =
                    indicator_product(H, d, opt.budget, /*keep_factors=*/false);
                ordered_json j{{"n", H.n},
                               {"r", H.r},
                               {"d", rep.d},
                               {"product", rep.product.to_string()},
                               {"verdict", rep.verdict},
                               {"factor_count", rep.factor_count}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // p-sum ------------------------------------------------------------------
    {
        auto* c = app.add_subcommand("p-sum", "sum of indicator products over matrices");
        c->add_option("--n", n, "block length")->required();
        c->add_option("--r", r, "row count")->required();
        c->add_option("--d", d, "target distance")->required();
        add_field_opts(c);
        c->add_option("--mode", mode, "exhaustive|mc")->capture_default_str();
        c->add_option("--samples", mc_samples, "Monte Carlo sample count")
            ->capture_default_str();
        c->add_option("--seed", opt.seed, "Monte Carlo seed")->capture_default_str();
        c->add_option("--workers", opt.workers, "worker threads")->capture_default_str();
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto field = FieldSpec::make_shared(opt.p, opt.m);
                if (mode == "exhaustive") {
                    const ExactScalar v =
                        p_sum_exhaustive(n, r, d, field, opt.workers, opt.budget);
                    ordered_json j{{"n", n},
                                   {"r", r},
                                   {"d", d},
                                   {"q", field->q()},
                                   {"mode", "exhaustive"},
                                   {"value", v.to_string()},
                                   {"positive", !v.is_zero()}};
                    write_output(opt.out_path, dump(j));
                } else if (mode == "mc") {
                    const MonteCarloEstimate e = p_sum_monte_carlo(
                        n, r, d, field, mc_samples, opt.seed, opt.workers, opt.budget);
                    ordered_json j{{"n", n},
                                   {"r", r},
                                   {"d", d},
                                   {"q", field->q()},
                                   {"mode", "mc"},
                                   {"estimate", e.estimate},
                                   {"std_error", e.std_error},
                                   {"samples", e.samples},
                                   {"seed", e.seed}};
                    write_output(opt.out_path, dump(j));
                } else {
                    raise(ErrorCode::DomainError, "mode must be exhaustive or mc");
                }
            };
        });
    }

    // expand -----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("expand",
                                     "per-matrix expansion of the indicator product");
        c->add_option("--matrix", matrix_path, "matrix file")->required();
        c->add_option("--d", d, "target distance")->required();
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const CheckMatrix H = load_matrix(matrix_path);
                const Polynomial p = expand_indicator_product(H, d, opt.budget);
                write_output(opt.out_path, p.to_text() + "\n");
            };
        });
    }

    // stefanescu ---------------------------------------------------------------
    {
        auto* c = app.add_subcommand("stefanescu",
                                     "positive-root upper bound from the pair decomposition");
        c->add_option("--poly", poly_text, "polynomial \"e1:c1 e2:c2 ...\"")->required();
        c->add_option("--tol", tol, "oracle tolerance")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const Polynomial p = Polynomial::parse_text(poly_text);
                const StefanescuDecomposition dec = stefanescu_decompose(p);
                const double b3 = stefanescu_bound(dec);
                const auto root = largest_positive_root(p, tol);
                ordered_json pairs = ordered_json::array();
                for (const auto& pr : dec.pairs)
                    pairs.push_back({{"c", pr.c.get_str()},
                                     {"d", pr.d},
                                     {"b", pr.b.get_str()},
                                     {"m", pr.m}});
                ordered_json j{{"b3", b3},
                               {"pairs", pairs},
                               {"remainder", dec.remainder.to_text()},
                               {"largest_positive_root",
                                root ? ordered_json(*root) : ordered_json(nullptr)}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // roots -----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("roots", "largest positive root and Cauchy bound");
        c->add_option("--poly", poly_text, "polynomial \"e1:c1 e2:c2 ...\"")->required();
        c->add_option("--tol", tol, "oracle tolerance")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const Polynomial p = Polynomial::parse_text(poly_text);
                const auto root = largest_positive_root(p, tol);
                ordered_json j{{"cauchy_bound", cauchy_bound(p).get_str()},
                               {"largest_positive_root",
                                root ? ordered_json(*root) : ordered_json(nullptr)}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // gv-curve ----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("gv-curve", "GV curve table (CSV)");
        c->add_option("--q", q, "alphabet size (prime power)")->capture_default_str();
        c->add_option("--samples", samples_u32, "number of delta samples")
            ->capture_default_str();
        c->add_option("--n", n_finite, "finite length for the rhs5t/empirical curves");
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto curves = curve_table(q, samples_u32, n_finite);
                std::ostringstream ss;
                write_curves_csv(ss, curves);
                write_output(opt.out_path, ss.str());
            };
        });
    }

    // rhs5t -----------------------------------------------------------------
    {
        auto* c = app.add_subcommand("rhs5t", "finite-n character-sum rate bound");
        c->add_option("--n", n, "block length")->required();
        c->add_option("--d", d, "target distance")->required();
        add_field_opts(c);
        c->add_option("--a", row_text, "reference row (default: zero row)");
        add_budget(c);
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto field = FieldSpec::make_shared(opt.p, opt.m);
                std::vector<FieldElement> a;
                if (!row_text.empty()) a = parse_vector(*field, row_text);
                const double log_q_sum = rhs_5t_sum(n, d, field, a, opt.budget);
                ordered_json j{{"n", n},
                               {"d", d},
                               {"q", field->q()},
                               {"log_q_sum", log_q_sum},
                               {"rate", 1.0 - log_q_sum / n}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // gap ------------------------------------------------------------------
    {
        auto* c = app.add_subcommand("gap", "finite-n tightness gap against the GV rate");
        c->add_option("--n", n, "block length")->required();
        c->add_option("--d", d, "target distance")->required();
        c->add_option("--q", q, "alphabet size (prime power)")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const double delta = static_cast<double>(d - 1) / n;
                const double gv = gv_rate(delta, q);
                const auto field = field_from_order(q);
                const double rhs_rate = 1.0 - rhs_5t_sum(n, d, field, {}) / n;
                ordered_json j{{"n", n},
                               {"d", d},
                               {"q", q},
                               {"delta", delta},
                               {"gv_rate", gv},
                               {"rhs_rate", rhs_rate},
                               {"gap", std::fabs(gv - rhs_rate)}};
                write_output(opt.out_path, dump(j));
            };
        });
    }

    // verify-indicator ---------------------------------------------------------
    {
        auto* c = app.add_subcommand(
            "verify-indicator", "indicator verdict vs brute-force minimum distance");
        c->add_option("--n", opt_n, "block length (omit for the standard grid)");
        c->add_option("--r", opt_r, "row count (omit for the standard grid)");
        c->add_option("--d", opt_d, "fixed distance (default: all d in [2, n])");
        add_field_opts(c);
        c->add_flag("--exhaustive", exhaustive_flag, "check every matrix (default)");
        c->add_option("--samples", opt_samples, "random sample count instead");
        c->add_option("--seed", opt.seed, "seed for sampled mode")->capture_default_str();
        c->add_option("--workers", opt.workers, "worker threads")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const auto field = FieldSpec::make_shared(opt.p, opt.m);
                std::vector<std::pair<uint32_t, uint32_t>> cases;
                if (opt_n && opt_r) {
                    cases.emplace_back(*opt_n, *opt_r);
                } else if (!opt_n && !opt_r) {
                    cases.assign(std::begin(kVerifyGrid), std::end(kVerifyGrid));
                } else {
                    raise(ErrorCode::DomainError, "--n and --r must be given together");
                }
                std::ostringstream ss;
                IndicatorVerifyResult total;
                for (const auto& [cn, cr] : cases) {
                    const IndicatorVerifyResult res = verify_indicator(
                        cn, cr, opt_d, field, opt_samples, opt.seed, opt.workers);
                    if (cases.size() > 1)
                        ss << "(n=" << cn << ", r=" << cr << "): checked " << res.matrices
                           << " matrices, " << res.mismatches << " mismatches\n";
                    total.matrices += res.matrices;
                    total.comparisons += res.comparisons;
                    total.mismatches += res.mismatches;
                }
                ss << "checked " << total.matrices << " matrices, " << total.mismatches
                   << " mismatches\n";
                write_output(opt.out_path, ss.str());
                if (total.mismatches > 0) exit_code = 3;
            };
        });
    }

    // verify-lemma -------------------------------------------------------------
    {
        auto* c = app.add_subcommand("verify-lemma",
                                     "root bound soundness on random decomposable polynomials");
        c->add_option("--count", count, "number of polynomials")->capture_default_str();
        c->add_option("--seed", opt.seed, "generator seed")->capture_default_str();
        c->add_option("--tol", tol, "oracle tolerance")->capture_default_str();
        add_out(c);
        c->callback([&] {
            action = [&] {
                const LemmaVerifyResult res = verify_lemma(count, opt.seed, tol);
                std::ostringstream ss;
                ss << "checked " << res.checked << " polynomials, " << res.violations
                   << " violations\n";
                write_output(opt.out_path, ss.str());
                if (res.violations > 0) exit_code = 3;
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (action) action();
    } catch (const Error& e) {
        std::cerr << "ERROR " << error_code_name(e.code()) << ": " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::SizeGuard:
                return 2;
            case ErrorCode::Internal:
                return 3;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "ERROR Internal: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}

} // namespace gvlab

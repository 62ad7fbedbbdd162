// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Usage: gvlab_acceptance <path-to-gvlab-cli>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "gvlab/codes.hpp"
#include "gvlab/curves.hpp"
#include "gvlab/errors.hpp"
#include "gvlab/indicator.hpp"
#include "gvlab/roots.hpp"
#include "gvlab/util.hpp"

namespace fs = std::filesystem;
using namespace gvlab;

namespace {

std::string g_cli;
fs::path g_tmp;
int g_failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

void run_criterion(int number, const std::string& name, double budget_s,
                   const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s > 0 && elapsed > budget_s) {
        out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %d: %s (%s%.2fs)\n", out.pass ? "PASS" : "FAIL", number,
                name.c_str(), out.detail.empty() ? "" : (out.detail + ", ").c_str(),
                elapsed);
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Runs the shipped CLI with --out into a scratch file; returns file bytes.
std::string cli_capture(const std::string& args, const std::string& tag, int expect_rc = 0) {
    const fs::path out = g_tmp / (tag + ".out");
    const std::string cmd = g_cli + " " + args + " --out " + out.string() + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    if (code != expect_rc)
        throw std::runtime_error("CLI exited " + std::to_string(code) + " for: " + args);
    return slurp(out);
}

Outcome criterion1_indicator_equivalence() {
    const auto field = FieldSpec::make_shared(2, 1);
    uint64_t matrices = 0, mismatches = 0;
    for (const auto [n, r] : {std::pair<uint32_t, uint32_t>{3, 1},
                              {3, 2},
                              {4, 2},
                              {4, 3},
                              {5, 2}}) {
        const IndicatorVerifyResult res =
            verify_indicator(n, r, std::nullopt, field, std::nullopt, 0, /*workers=*/1);
        matrices += res.matrices;
        mismatches += res.mismatches;
    }
    return {mismatches == 0,
            "checked " + std::to_string(matrices) + " matrices, " +
                std::to_string(mismatches) + " mismatches"};
}

Outcome criterion2_sum_semantics() {
    const auto field = FieldSpec::make_shared(2, 1);
    const ExactScalar zero = p_sum_exhaustive(3, 1, 3, field);
    const ExactScalar pos = p_sum_exhaustive(3, 2, 3, field);
    bool ok = zero.is_zero() && !pos.is_zero() && pos.dyadic().sign() > 0;
    std::string detail = "exhaustive: P(3,1,3)=" + zero.to_string() +
                         ", P(3,2,3)=" + pos.to_string();

    const MonteCarloEstimate mc_zero = p_sum_monte_carlo(3, 1, 3, field, 100000, 11);
    ok = ok && mc_zero.estimate == 0.0;

    const MonteCarloEstimate mc_pos = p_sum_monte_carlo(3, 2, 3, field, 100000, 11);
    const double diff = std::fabs(mc_pos.estimate - pos.to_double());
    ok = ok && mc_pos.std_error > 0.0 && diff <= 4.0 * mc_pos.std_error;
    detail += "; |mc - exact| = " + std::to_string(diff) + " <= 4se = " +
              std::to_string(4.0 * mc_pos.std_error);
    return {ok, detail};
}

Outcome criterion3_lemma_soundness() {
    const LemmaVerifyResult res = verify_lemma(10000, 1, 1e-12);
    bool ok = res.checked == 10000 && res.violations == 0;

    const double b3 = stefanescu_bound(Polynomial::parse_text("2:1 0:-4"));
    const double tight_err = std::fabs(b3 - 2.0);
    ok = ok && tight_err <= 1e-12;
    return {ok, std::to_string(res.violations) + " violations in 10000; tight-case error " +
                    std::to_string(tight_err)};
}

Outcome criterion4_expansion_consistency() {
    const auto field = FieldSpec::make_shared(2, 1);
    SplitMix64 g(2718);
    uint64_t done = 0, value_bad = 0, root_bad = 0;
    while (done < 1000) {
        const uint32_t n = 2 + static_cast<uint32_t>(g.below(4)); // 2..5
        const uint32_t r = 1 + static_cast<uint32_t>(g.below(3)); // 1..3
        const uint32_t d = 2 + static_cast<uint32_t>(g.below(2)); // 2..3
        if (d > n) continue;
        const CheckMatrix M = random_matrix(n, r, field, g.next());
        const Polynomial p = expand_indicator_product(M, d);
        const IndicatorReport rep = indicator_product(M, d, 0, false);

        mpz_class qr = 1;
        mpz_mul_2exp(qr.get_mpz_t(), qr.get_mpz_t(), r);
        if (p.eval(mpq_class(qr)) != rep.product.dyadic().to_rational()) ++value_bad;

        const double tmax = max_factor_root(M, d).to_double();
        const auto root = largest_positive_root(p, 1e-12);
        if (!root || std::fabs(*root - tmax) > 1e-9) ++root_bad;
        ++done;
    }
    return {value_bad == 0 && root_bad == 0,
            "1000 expansions; " + std::to_string(value_bad) + " value mismatches, " +
                std::to_string(root_bad) + " root mismatches"};
}

Outcome criterion5_gv_constructive() {
    uint64_t built = 0;
    for (uint32_t q : {2u, 3u, 4u}) {
        const auto field = field_from_order(q);
        for (uint32_t n = 2; n <= 12; ++n)
            for (uint32_t d = 2; d <= n; ++d) {
                const CheckMatrix H = gv_greedy_construct(n, d, field);
                if (!min_distance_at_least(H, d))
                    return {false, "distance violated at q=" + std::to_string(q) +
                                       " n=" + std::to_string(n) + " d=" + std::to_string(d)};
                mpz_class qr = 1;
                for (uint32_t i = 0; i < H.r; ++i) qr *= q;
                if (qr > q * ball_volume(n - 1, d - 2, q))
                    return {false, "redundancy above the GV threshold at q=" +
                                       std::to_string(q) + " n=" + std::to_string(n) +
                                       " d=" + std::to_string(d)};
                ++built;
            }
    }
    return {true, std::to_string(built) + " codes built and verified"};
}

Outcome criterion6_curve_anchors() {
    bool ok = std::fabs(entropy_q(0.5, 2) - 1.0) <= 1e-12;
    for (uint32_t q : {2u, 3u, 4u}) {
        ok = ok && std::fabs(gv_rate(0.0, q) - 1.0) <= 1e-12;
        ok = ok && std::fabs(gv_rate((q - 1.0) / q, q)) <= 1e-12;
    }
    const double h11 = entropy_q(0.11, 2);
    ok = ok && std::fabs(h11 - 0.49992) <= 1e-4;
    return {ok, "H2(0.11) = " + std::to_string(h11)};
}

Outcome criterion7_gap_convergence() {
    const double g100 = tightness_gap(100, 12, 2);
    const double g1000 = tightness_gap(1000, 111, 2);
    const double g10000 = tightness_gap(10000, 1101, 2);
    const bool ok =
        g1000 <= 0.02 && g10000 <= 0.005 && g100 >= g1000 && g1000 >= g10000;
    char buf[128];
    std::snprintf(buf, sizeof buf, "gap(100)=%.6f gap(1000)=%.6f gap(10000)=%.6f", g100,
                  g1000, g10000);
    return {ok, buf};
}

Outcome criterion8_determinism() {
    const std::string mc = "p-sum --n 4 --r 2 --d 3 --mode mc --samples 20000 --seed 9";
    const std::string ex = "p-sum --n 4 --r 3 --d 3";
    const std::string vi = "verify-indicator --n 4 --r 2 --exhaustive";
    const std::string curve = "gv-curve --q 2 --samples 21 --n 500";

    bool ok = true;
    ok = ok && cli_capture(mc, "mc_a") == cli_capture(mc, "mc_b");
    ok = ok && cli_capture(mc + " --workers 1", "mc_w1") ==
                   cli_capture(mc + " --workers 4", "mc_w4");
    ok = ok && cli_capture(ex + " --workers 1", "ex_w1") ==
                   cli_capture(ex + " --workers 4", "ex_w4");
    ok = ok && cli_capture(vi + " --workers 1", "vi_w1") ==
                   cli_capture(vi + " --workers 4", "vi_w4");
    ok = ok && cli_capture(curve, "cv_a") == cli_capture(curve, "cv_b");
    return {ok, "5 byte-identical command pairs"};
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: gvlab_acceptance <path-to-gvlab-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    g_tmp = fs::temp_directory_path() /
            ("gvlab_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(g_tmp);

    run_criterion(1, "indicator equivalence over the exhaustive binary grids", 60,
                  criterion1_indicator_equivalence);
    run_criterion(2, "matrix-sum existence semantics, exhaustive and Monte Carlo", 10,
                  criterion2_sum_semantics);
    run_criterion(3, "root-bound soundness on 10^4 random polynomials", 30,
                  criterion3_lemma_soundness);
    run_criterion(4, "expansion evaluates to the product; dominant root matches", 0,
                  criterion4_expansion_consistency);
    run_criterion(5, "greedy constructions meet distance and the GV redundancy cap", 120,
                  criterion5_gv_constructive);
    run_criterion(6, "entropy and rate-curve anchors", 0, criterion6_curve_anchors);
    run_criterion(7, "finite-length gap convergence with exact ball sums", 30,
                  criterion7_gap_convergence);
    run_criterion(8, "seeded subcommands byte-identical across runs and workers", 0,
                  criterion8_determinism);

    fs::remove_all(g_tmp);
    std::printf("%d/8 criteria passed\n", 8 - g_failures);
    return g_failures == 0 ? 0 : 1;
}

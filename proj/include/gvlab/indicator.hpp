#ifndef GVLAB_INDICATOR_HPP
#define GVLAB_INDICATOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gvlab/codes.hpp"
#include "gvlab/dyadic.hpp"
#include "gvlab/roots.hpp"

namespace gvlab {

// E(H, sigma) = sum over rows j and coordinates s of cos(2*pi*(h_j.sigma)_s/p).
// Exact integer (as a dyadic) in characteristic 2, approximate with a
// propagated error bound otherwise.  E <= r*m with equality iff sigma lies in
// the null space of H.
ExactScalar cosine_exponent(const CheckMatrix& H, const std::vector<FieldElement>& sigma);

// q^r - p^E(H, sigma): in [0, q^r - p^(-rm)], and exactly zero iff sigma is a
// codeword.  The zero decision is made by the exact membership test, never by
// the numeric value.
ExactScalar indicator_factor(const CheckMatrix& H, const std::vector<FieldElement>& sigma);

struct IndicatorReport {
    CheckMatrix matrix;
    uint32_t d = 0;
    std::vector<ExactScalar> factors; // per enumerated sigma (when kept)
    ExactScalar product;
    bool verdict = false; // product != 0, i.e. d_min >= d
    uint64_t factor_count = 0;
};

// Product of indicator factors over all sigma of weight 1..d-1.  The verdict
// equals min_distance(H) >= d.  keep_factors=false skips storing the per-sigma
// values (the product is still exact).
IndicatorReport indicator_product(const CheckMatrix& H, uint32_t d,
                                  uint64_t budget = 0, bool keep_factors = true);

// Full sum of indicator products over all q^(r*n) matrices; positive iff some
// length-n code with redundancy <= r has d_min >= d.  Requires q^(r*n) <= 2^24.
// Exact (and worker-count independent) in characteristic 2.
ExactScalar p_sum_exhaustive(uint32_t n, uint32_t r, uint32_t d,
                             std::shared_ptr<const FieldSpec> field,
                             unsigned workers = 1, uint64_t budget = 0);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// Unbiased estimator q^(r*n) * mean of indicator products over uniform random
// matrices.  Sample i is drawn from a generator keyed by (seed, i), so the
// estimate does not depend on the worker count.
MonteCarloEstimate p_sum_monte_carlo(uint32_t n, uint32_t r, uint32_t d,
                                     std::shared_ptr<const FieldSpec> field,
                                     uint64_t samples, uint64_t seed,
                                     unsigned workers = 1, uint64_t budget = 0);

// Per-matrix expansion: product over sigma of (X - t_sigma), t_sigma = 2^E.
// Evaluating at X = q^r recovers indicator_product exactly; the largest root
// is max t_sigma.  Characteristic 2 only; at most 64 factors.
Polynomial expand_indicator_product(const CheckMatrix& H, uint32_t d,
                                    uint64_t budget = 0);

// Largest t_sigma of the expansion (the dominant root), for cross-checks.
Dyadic max_factor_root(const CheckMatrix& H, uint32_t d, uint64_t budget = 0);

struct IndicatorVerifyResult {
    uint64_t matrices = 0;
    uint64_t comparisons = 0;
    uint64_t mismatches = 0;
};

// Exhaustive equivalence harness: every matrix of the given shape (or a
// seeded random sample), every d in [2, n] unless fixed: the product-zero
// verdict must match brute-force min_distance.
IndicatorVerifyResult verify_indicator(uint32_t n, uint32_t r,
                                       std::optional<uint32_t> d_fixed,
                                       std::shared_ptr<const FieldSpec> field,
                                       std::optional<uint64_t> sample_count,
                                       uint64_t seed, unsigned workers = 1);

} // namespace gvlab

#endif

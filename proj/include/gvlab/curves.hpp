#ifndef GVLAB_CURVES_HPP
#define GVLAB_CURVES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gvlab/field.hpp"

namespace gvlab {

// q-ary entropy H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x),
// extended continuously to x = 0 and x = 1.
double entropy_q(double x, uint32_t q);

// 1 - H_q(delta) on [0, (q-1)/q]; DomainError beyond (the rate would be
// negative there).
double gv_rate(double delta, uint32_t q);

// Vol_q(n, w) = sum_{i=0}^{w} C(n,i) (q-1)^i, exact.
mpz_class ball_volume(uint32_t n, uint32_t w, uint32_t q);

// log2 of a positive big integer via bit length + 64-bit mantissa;
// relative error <= 2^-50.
double log2_mpz(const mpz_class& v);

// (1/n) log_q Vol_q(n, w); converges to H_q(w/n).
double ball_exponent(uint32_t n, uint32_t w, uint32_t q);

// log_q of sum over sigma (1 <= wt <= d-1) of p^(sum_s cos(2 pi (a.sigma)_s / p)).
// An empty or all-zero reference row uses the exact closed form
// log_q(q * (Vol_q(n, d-1) - 1)).
double rhs_5t_sum(uint32_t n, uint32_t d, const std::shared_ptr<const FieldSpec>& field,
                  std::span<const FieldElement> a, uint64_t budget = 0);

// | gv_rate((d-1)/n) - (1 - rhs_5t_sum(n,d,0)/n) |, the finite-n distance
// between the two curves at delta = (d-1)/n.
double tightness_gap(uint32_t n, uint32_t d, uint32_t q);

// Field of order q with the default modulus; DomainError when q is not a
// prime power.
std::shared_ptr<const FieldSpec> field_from_order(uint32_t q);

struct RatePoint {
    double delta = 0.0;
    double rate = 0.0;
    std::optional<uint32_t> n;  // absent = asymptotic formula
    std::optional<double> gap;  // absent on the gv reference curve
};

struct BoundCurve {
    uint32_t q = 2;
    std::string label; // "gv" | "rhs5t" | "greedy-empirical"
    std::vector<RatePoint> points;
};

// GV curve at num_samples equally spaced deltas in [0, (q-1)/q]; with
// n_finite also the finite-n rhs5t curve, plus greedy-empirical points when
// n_finite is small enough to construct (<= 14).
std::vector<BoundCurve> curve_table(uint32_t q, uint32_t num_samples,
                                    std::optional<uint32_t> n_finite);

// CSV schema "q,label,n,delta,rate,gap", 12 significant digits, rows ordered
// by label then delta.
void write_curves_csv(std::ostream& out, const std::vector<BoundCurve>& curves);

} // namespace gvlab

#endif

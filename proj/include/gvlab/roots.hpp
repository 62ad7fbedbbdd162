#ifndef GVLAB_ROOTS_HPP
#define GVLAB_ROOTS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gvlab {

struct PolyTerm {
    int64_t exp = 0;
    mpq_class coeff;
};

// Sparse univariate polynomial with exact rational coefficients, terms
// strictly descending by exponent, no zero coefficients.
class Polynomial {
  public:
    Polynomial() = default;

    // Merges duplicate exponents, drops zeros, sorts descending.
    static Polynomial from_terms(std::vector<PolyTerm> terms);

    const std::vector<PolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int64_t degree() const { return terms_.empty() ? -1 : terms_.front().exp; }
    const mpq_class& leading_coeff() const { return terms_.front().coeff; }

    mpq_class eval(const mpq_class& x) const;
    Polynomial derivative() const;

    // this * (X - root)
    Polynomial mul_linear(const mpq_class& root) const;
    Polynomial operator+(const Polynomial& o) const;

    // Text format "e1:c1 e2:c2 ..." with exact rational coefficients.
    static Polynomial parse_text(const std::string& text);
    std::string to_text() const;

    bool operator==(const Polynomial& o) const;

  private:
    std::vector<PolyTerm> terms_;
};

// Adjacent sign changes of the coefficient sequence by descending exponent.
int sign_variations(const Polynomial& poly);

struct StefanescuPair {
    mpq_class c; // positive coefficient
    int64_t d;   // its exponent
    mpq_class b; // magnitude of the paired negative coefficient
    int64_t m;   // its exponent, m < d
};

struct StefanescuDecomposition {
    std::vector<StefanescuPair> pairs;
    Polynomial remainder; // all coefficients >= 0
};

// Canonical pairing: scanning by descending exponent, each negative term is
// paired with the nearest preceding still-unpaired positive term (taking its
// full coefficient); remaining positive terms form the remainder.  An empty
// remainder after a trailing negative term counts as a virtual positive for
// the evenness hypothesis, which is what makes e.g. x^2 - 4 admissible.
StefanescuDecomposition stefanescu_decompose(const Polynomial& poly);

// B3 = max over pairs of (b_i/c_i)^(1/(d_i-m_i)), an upper bound for every
// positive root.  Exact-rational until the final k-th root, which is rounded
// up so the bound is never under-reported.
double stefanescu_bound(const Polynomial& poly);
double stefanescu_bound(const StefanescuDecomposition& dec);

// 1 + max |a_i| / |lead| over non-leading coefficients; bounds |root|.
mpq_class cauchy_bound(const Polynomial& poly);

// Largest positive real root to within +-tol (tol >= 2^-50), or nullopt when
// none exists.  Sign scan over a 2^16-point grid on (0, cauchy_bound],
// bisection at the topmost sign change, and derivative-based refinement to
// catch even-multiplicity roots above it.
std::optional<double> largest_positive_root(const Polynomial& poly, double tol);

// Coefficient reversal y^deg * p(1/y); maps each root x to 1/x.
// ZeroConstantTerm when p(0) = 0.
Polynomial reciprocal_polynomial(const Polynomial& poly);

struct LemmaVerifyResult {
    uint64_t checked = 0;
    uint64_t violations = 0;
    double max_root_minus_bound = -1.0; // most adverse root - bound seen
};

// Seeded harness: random products of positive-rooted linear factors with a
// nonnegative perturbation, checking stefanescu_bound >= largest root - 1e-9
// on every instance.
LemmaVerifyResult verify_lemma(uint64_t count, uint64_t seed, double tol);

} // namespace gvlab

#endif

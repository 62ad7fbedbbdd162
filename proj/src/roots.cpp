#include "gvlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gvlab/errors.hpp"
#include "gvlab/util.hpp"

namespace gvlab {

namespace {

constexpr int64_t kMaxOracleDegree = 1 << 16;
constexpr int kGridPoints = 1 << 16;

long double mpq_to_ld(const mpq_class& q) {
    long ne = 0, de = 0;
    const double nm = mpz_get_d_2exp(&ne, q.get_num().get_mpz_t());
    const double dm = mpz_get_d_2exp(&de, q.get_den().get_mpz_t());
    return static_cast<long double>(nm) / static_cast<long double>(dm) *
           std::exp2l(static_cast<long double>(ne - de));
}

// Smallest double >= q.
double mpq_to_double_round_up(const mpq_class& q) {
    double d = mpq_get_d(q.get_mpq_t()); // truncated toward zero
    while (mpq_class(d) < q)
        d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

// Dense long double coefficients, index = exponent.
std::vector<long double> dense_ld(const Polynomial& p) {
    std::vector<long double> c(static_cast<size_t>(p.degree()) + 1, 0.0L);
    for (const auto& t : p.terms())
        c[static_cast<size_t>(t.exp)] = mpq_to_ld(t.coeff);
    return c;
}

// sum |c_i| * i * x^(i-1): upper bound on |p'| at x, used to decide whether
// a derivative root is also a root of p.
long double abs_derivative_bound(const std::vector<long double>& c, long double x) {
    long double acc = 0.0L;
    for (size_t i = c.size(); i-- > 1;)
        acc = acc * x + std::fabs(c[i]) * static_cast<long double>(i);
    return acc;
}

// Sign of p(x) that can be trusted near roots: long double Horner with a
// running error envelope, falling back to exact rational evaluation when the
// computed value is inside the cancellation noise.  Query points are doubles,
// so the exact fallback sees the identical dyadic rational.
int eval_sign(const std::vector<long double>& c, const Polynomial& exact, double x) {
    const long double xl = static_cast<long double>(x);
    long double acc = 0.0L, mag = 0.0L;
    const long double ax = std::fabs(xl);
    for (size_t i = c.size(); i-- > 0;) {
        acc = acc * xl + c[i];
        mag = mag * ax + std::fabs(c[i]);
    }
    const long double noise =
        mag * static_cast<long double>(2 * c.size()) * 0x1.0p-63L;
    if (std::fabs(acc) > noise)
        return acc > 0.0L ? 1 : -1;
    return sgn(exact.eval(mpq_class(x)));
}

std::optional<double> largest_root_impl(const Polynomial& poly, double tol);

} // namespace

Polynomial Polynomial::from_terms(std::vector<PolyTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const PolyTerm& a, const PolyTerm& b) { return a.exp > b.exp; });
    Polynomial p;
    for (auto& t : terms) {
        if (t.exp < 0)
            raise(ErrorCode::DomainError, "polynomial exponents must be non-negative");
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
            p.terms_.back().coeff += t.coeff;
        } else {
            p.terms_.push_back(std::move(t));
        }
    }
    std::erase_if(p.terms_, [](const PolyTerm& t) { return t.coeff == 0; });
    return p;
}

mpq_class Polynomial::eval(const mpq_class& x) const {
    // Sparse Horner: carry the gap between consecutive exponents.
    mpq_class acc = 0;
    int64_t prev_exp = -1;
    for (const auto& t : terms_) {
        if (prev_exp < 0) {
            acc = t.coeff;
        } else {
            for (int64_t i = 0; i < prev_exp - t.exp; ++i) acc *= x;
            acc += t.coeff;
        }
        prev_exp = t.exp;
    }
    if (prev_exp > 0)
        for (int64_t i = 0; i < prev_exp; ++i) acc *= x;
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<PolyTerm> out;
    for (const auto& t : terms_)
        if (t.exp > 0)
            out.push_back({t.exp - 1, t.coeff * t.exp});
    return from_terms(std::move(out));
}

Polynomial Polynomial::mul_linear(const mpq_class& root) const {
    std::vector<PolyTerm> out;
    for (const auto& t : terms_) {
        out.push_back({t.exp + 1, t.coeff});
        out.push_back({t.exp, -t.coeff * root});
    }
    return from_terms(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<PolyTerm> out = terms_;
    out.insert(out.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(out));
}

Polynomial Polynomial::parse_text(const std::string& text) {
    std::vector<PolyTerm> out;
    std::istringstream ss(text);
    std::string tok;
    while (ss >> tok) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            raise(ErrorCode::ParseError, "polynomial term '" + tok + "' is not e:c");
        try {
            const std::string estr = tok.substr(0, colon);
            size_t used = 0;
            const int64_t e = std::stoll(estr, &used);
            if (used != estr.size())
                raise(ErrorCode::ParseError, "bad exponent in '" + tok + "'");
            mpq_class c(tok.substr(colon + 1));
            if (c.get_den() == 0)
                raise(ErrorCode::ParseError, "zero denominator in '" + tok + "'");
            c.canonicalize();
            out.push_back({e, std::move(c)});
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            raise(ErrorCode::ParseError, "bad polynomial term '" + tok + "'");
        }
        if (out.back().exp < 0)
            raise(ErrorCode::ParseError, "negative exponent in '" + tok + "'");
    }
    return from_terms(std::move(out));
}

std::string Polynomial::to_text() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) out << " ";
        out << t.exp << ":" << t.coeff.get_str();
        first = false;
    }
    if (first) out << "0:0";
    return out.str();
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

int sign_variations(const Polynomial& poly) {
    if (poly.is_zero())
        raise(ErrorCode::DomainError, "sign variations of the zero polynomial");
    int count = 0;
    int prev = 0;
    for (const auto& t : poly.terms()) {
        const int s = sgn(t.coeff);
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

StefanescuDecomposition stefanescu_decompose(const Polynomial& poly) {
    if (poly.is_zero())
        raise(ErrorCode::DomainError, "cannot decompose the zero polynomial");
    // Evenness hypothesis with the empty remainder read as a trailing
    // virtual positive term.
    int variations = sign_variations(poly);
    if (sgn(poly.terms().back().coeff) < 0) ++variations;
    if (variations % 2 != 0)
        raise(ErrorCode::OddVariations,
              "sign variation count is odd; decomposition form does not apply");

    StefanescuDecomposition dec;
    std::vector<PolyTerm> remainder;
    std::optional<PolyTerm> slot; // nearest preceding unpaired positive
    for (const auto& t : poly.terms()) {
        if (sgn(t.coeff) > 0) {
            if (slot) remainder.push_back(*slot);
            slot = t;
        } else {
            if (!slot)
                raise(ErrorCode::NoValidDecomposition,
                      "negative term x^" + std::to_string(t.exp) +
                          " has no preceding unpaired positive term");
            dec.pairs.push_back({slot->coeff, slot->exp, -t.coeff, t.exp});
            slot.reset();
        }
    }
    if (slot) remainder.push_back(*slot);
    dec.remainder = Polynomial::from_terms(std::move(remainder));

    // d_i > m_i > d_{i+1} holds by construction of the scan; keep the check
    // as a guard on the invariant.
    for (size_t i = 0; i < dec.pairs.size(); ++i) {
        if (dec.pairs[i].d <= dec.pairs[i].m ||
            (i + 1 < dec.pairs.size() && dec.pairs[i].m <= dec.pairs[i + 1].d))
            raise(ErrorCode::NoValidDecomposition, "interleaving violated");
    }
    return dec;
}

double stefanescu_bound(const StefanescuDecomposition& dec) {
    double best = 0.0;
    for (const auto& pr : dec.pairs) {
        const mpq_class ratio = pr.b / pr.c;
        const int64_t k = pr.d - pr.m;
        double v;
        if (k == 1) {
            v = mpq_to_double_round_up(ratio);
        } else {
            const long double r = powl(mpq_to_ld(ratio), 1.0L / static_cast<long double>(k));
            v = static_cast<double>(r * (1.0L + 0x1.0p-50L));
        }
        best = std::max(best, v);
    }
    return best;
}

double stefanescu_bound(const Polynomial& poly) {
    return stefanescu_bound(stefanescu_decompose(poly));
}

mpq_class cauchy_bound(const Polynomial& poly) {
    if (poly.is_zero())
        raise(ErrorCode::DomainError, "Cauchy bound of the zero polynomial");
    const mpq_class lead = abs(poly.leading_coeff());
    mpq_class worst = 0;
    for (size_t i = 1; i < poly.terms().size(); ++i)
        worst = std::max(worst, mpq_class(abs(poly.terms()[i].coeff)));
    return 1 + worst / lead;
}

namespace {

// Fujiwara: every complex root z satisfies |z| <= 2 max_k |a_{n-k}/a_n|^{1/k}.
// Much tighter than the Cauchy bound when coefficients are large, which keeps
// the sign grid resolving the actual root scale.
long double fujiwara_bound_ld(const std::vector<long double>& c) {
    const size_t n = c.size() - 1;
    const long double lead = std::fabs(c[n]);
    long double best = 0.0L;
    for (size_t k = 1; k <= n; ++k) {
        if (c[n - k] == 0.0L) continue;
        best = std::max(best, powl(std::fabs(c[n - k]) / lead,
                                   1.0L / static_cast<long double>(k)));
    }
    return 2.0L * best;
}

std::optional<double> largest_root_impl(const Polynomial& poly, double tol) {
    if (poly.is_zero() || poly.degree() == 0)
        return std::nullopt;
    if (poly.degree() > kMaxOracleDegree)
        raise(ErrorCode::SizeGuard, "polynomial degree too large for the root oracle");

    const auto coeffs = dense_ld(poly);
    long double bound_ld = mpq_to_ld(cauchy_bound(poly));
    bound_ld = std::min(bound_ld, fujiwara_bound_ld(coeffs));
    const double bound = static_cast<double>(bound_ld * (1.0L + 0x1.0p-50L));
    const double step = bound / kGridPoints;

    // Descending scan: the topmost sign change brackets the largest
    // odd-multiplicity root.
    std::optional<double> found;
    double hi = bound;
    int shi = eval_sign(coeffs, poly, hi);
    for (int i = kGridPoints - 1; i >= 0 && !found; --i) {
        const double lo = step * i;
        const int slo = eval_sign(coeffs, poly, lo);
        if (shi == 0) {
            found = hi;
            break;
        }
        if (slo != 0 && slo != shi) {
            double a = lo, b = hi;
            int sa = slo;
            while (b - a > tol) {
                const double mid = a + (b - a) / 2;
                const int sm = eval_sign(coeffs, poly, mid);
                if (sm == 0) {
                    a = b = mid;
                    break;
                }
                if (sm == sa) {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            found = a + (b - a) / 2;
            break;
        }
        hi = lo;
        shi = slo;
    }
    // slo at i==0 is the sign at x=0; 0 itself is not a positive root, and a
    // bracket ending there still bisects inside (0, step].

    // Even-multiplicity roots above the topmost crossing leave no sign
    // change but are roots of the derivative; recurse and test membership
    // with |p(y)| <= (local derivative bound) * tol, evaluated exactly.
    const Polynomial deriv = poly.derivative();
    if (!deriv.is_zero() && deriv.degree() >= 1) {
        const auto y = largest_root_impl(deriv, tol);
        if (y && *y > found.value_or(0.0)) {
            const long double dbound =
                abs_derivative_bound(coeffs, static_cast<long double>(*y));
            const double thresh =
                static_cast<double>(dbound) * tol + 0x1.0p-40;
            const mpq_class py = poly.eval(mpq_class(*y));
            if (abs(py) <= mpq_class(thresh))
                found = *y;
        }
    }
    return found;
}

} // namespace

std::optional<double> largest_positive_root(const Polynomial& poly, double tol) {
    if (poly.is_zero())
        raise(ErrorCode::DomainError, "root oracle needs a nonzero polynomial");
    if (!(tol >= 0x1.0p-50))
        raise(ErrorCode::DomainError, "root oracle tolerance must be >= 2^-50");
    // Factor out x^k: positive roots are unchanged and the sign scan gets a
    // nonzero value at the origin.
    const int64_t kmin = poly.terms().back().exp;
    if (kmin > 0) {
        std::vector<PolyTerm> shifted;
        for (const auto& t : poly.terms()) shifted.push_back({t.exp - kmin, t.coeff});
        return largest_root_impl(Polynomial::from_terms(std::move(shifted)), tol);
    }
    return largest_root_impl(poly, tol);
}

Polynomial reciprocal_polynomial(const Polynomial& poly) {
    if (poly.is_zero() || poly.terms().back().exp != 0)
        raise(ErrorCode::ZeroConstantTerm,
              "reciprocal transform requires a nonzero constant term");
    const int64_t deg = poly.degree();
    std::vector<PolyTerm> out;
    for (const auto& t : poly.terms())
        out.push_back({deg - t.exp, t.coeff});
    return Polynomial::from_terms(std::move(out));
}

LemmaVerifyResult verify_lemma(uint64_t count, uint64_t seed, double tol) {
    LemmaVerifyResult res;
    for (uint64_t i = 0; i < count; ++i) {
        SplitMix64 g(mix_seed(seed, i));
        const uint32_t nroots = 1 + static_cast<uint32_t>(g.below(6));
        Polynomial p = Polynomial::from_terms({{0, mpq_class(1)}});
        mpq_class max_root = 0;
        for (uint32_t j = 0; j < nroots; ++j) {
            const mpq_class root(1 + g.below(64), 1 + g.below(8));
            p = p.mul_linear(root);
            max_root = std::max(max_root, root);
        }
        // Nonnegative perturbation on already-positive coefficients keeps the
        // sign pattern, so the decomposition stays valid.
        if (g.below(2) == 1) {
            std::vector<PolyTerm> bump;
            for (const auto& t : p.terms())
                if (sgn(t.coeff) > 0 && g.below(2) == 1)
                    bump.push_back({t.exp, mpq_class(g.below(16))});
            p = p + Polynomial::from_terms(std::move(bump));
        }

        const double b3 = stefanescu_bound(p);
        const auto root = largest_positive_root(p, tol);
        ++res.checked;
        if (root) {
            const double gap = *root - b3;
            res.max_root_minus_bound = std::max(res.max_root_minus_bound, gap);
            if (gap > 1e-9) ++res.violations;
        }
    }
    return res;
}

} // namespace gvlab

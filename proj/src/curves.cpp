#include "gvlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gvlab/codes.hpp"
#include "gvlab/dyadic.hpp"
#include "gvlab/errors.hpp"

namespace gvlab {

double entropy_q(double x, uint32_t q) {
    if (q < 2)
        raise(ErrorCode::DomainError, "entropy needs q >= 2");
    if (!(x >= 0.0 && x <= 1.0))
        raise(ErrorCode::DomainError, "entropy argument outside [0, 1]");
    const double lq = std::log2(static_cast<double>(q));
    if (x == 0.0) return 0.0;
    if (x == 1.0) return std::log2(static_cast<double>(q - 1)) / lq;
    return (x * std::log2(static_cast<double>(q - 1)) - x * std::log2(x) -
            (1.0 - x) * std::log2(1.0 - x)) /
           lq;
}

double gv_rate(double delta, uint32_t q) {
    const double dmax = static_cast<double>(q - 1) / q;
    if (!(delta >= 0.0 && delta <= dmax))
        raise(ErrorCode::DomainError, "gv_rate needs 0 <= delta <= (q-1)/q");
    return 1.0 - entropy_q(delta, q);
}

mpz_class ball_volume(uint32_t n, uint32_t w, uint32_t q) {
    if (w > n)
        raise(ErrorCode::DomainError, "ball radius exceeds length");
    mpz_class total = 1; // i = 0
    mpz_class binom = 1;
    mpz_class pw = 1;
    for (uint32_t i = 1; i <= w; ++i) {
        binom *= (n - i + 1);
        binom /= i;
        pw *= (q - 1);
        total += binom * pw;
    }
    return total;
}

double log2_mpz(const mpz_class& v) {
    if (v <= 0)
        raise(ErrorCode::DomainError, "log2 of a non-positive integer");
    const size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (bits <= 64) {
        const uint64_t u = mpz_get_ui(v.get_mpz_t());
        return static_cast<double>(log2l(static_cast<long double>(u)));
    }
    mpz_class top;
    mpz_fdiv_q_2exp(top.get_mpz_t(), v.get_mpz_t(), bits - 64);
    const uint64_t u = mpz_get_ui(top.get_mpz_t());
    return static_cast<double>(log2l(static_cast<long double>(u)) +
                               static_cast<long double>(bits - 64));
}

double ball_exponent(uint32_t n, uint32_t w, uint32_t q) {
    if (w < 1 || w > n)
        raise(ErrorCode::DomainError, "ball exponent needs 1 <= w <= n");
    return log2_mpz(ball_volume(n, w, q)) /
           (static_cast<double>(n) * std::log2(static_cast<double>(q)));
}

double rhs_5t_sum(uint32_t n, uint32_t d, const std::shared_ptr<const FieldSpec>& field,
                  std::span<const FieldElement> a, uint64_t budget) {
    if (n < 1 || d < 2)
        raise(ErrorCode::DomainError, "rhs sum needs n >= 1 and d >= 2");
    const FieldSpec& f = *field;
    const uint32_t q = f.q();
    const uint32_t wmax = std::min(d - 1, n);
    const double lq = std::log2(static_cast<double>(q));

    bool zero_row = true;
    for (FieldElement e : a)
        if (e != 0) zero_row = false;
    if (!a.empty() && a.size() != n)
        raise(ErrorCode::LengthMismatch, "reference row length must be n");

    if (zero_row) {
        // Every term is p^m = q: the sum is exactly q * (Vol - 1).
        const mpz_class count = ball_volume(n, wmax, q) - 1;
        return log2_mpz(count * q) / lq;
    }

    std::vector<FieldElement> row(a.begin(), a.end());
    LowWeightEnumerator en(n, 1, wmax, field, budget);
    std::vector<FieldElement> sigma(n);

    if (f.is_char2()) {
        // E takes integer values in [-m, m]; histogram then sum exactly.
        const uint32_t m = f.m();
        std::vector<uint64_t> counts(2 * m + 1, 0);
        while (en.next(sigma)) {
            const FieldElement e = f.vec_inner(row, sigma);
            const long ex = static_cast<long>(m) - 2 * __builtin_popcount(e);
            ++counts[static_cast<size_t>(ex + static_cast<long>(m))];
        }
        Dyadic sum;
        for (uint32_t i = 0; i < counts.size(); ++i) {
            if (counts[i] == 0) continue;
            const long ex = static_cast<long>(i) - static_cast<long>(m);
            sum = sum + Dyadic::scaled(mpz_class(static_cast<unsigned long>(counts[i])), ex);
        }
        const double l2 = log2_mpz(sum.mantissa()) + static_cast<double>(sum.exp2());
        return l2 / lq;
    }

    long double acc = 0.0L;
    const long double lp = logl(static_cast<long double>(f.p()));
    while (en.next(sigma)) {
        const FieldElement e = f.vec_inner(row, sigma);
        const auto coords = f.coords(e);
        long double ex = 0.0L;
        for (uint32_t s = 0; s < f.m(); ++s)
            ex += cosl(2.0L * M_PIl * static_cast<long double>(coords[s]) /
                       static_cast<long double>(f.p()));
        acc += expl(ex * lp);
    }
    return static_cast<double>(log2l(acc)) / lq;
}

std::shared_ptr<const FieldSpec> field_from_order(uint32_t q) {
    if (q < 2)
        raise(ErrorCode::DomainError, "field order must be >= 2");
    uint32_t p = 0;
    for (uint32_t f = 2; f * f <= q; ++f)
        if (q % f == 0) {
            p = f;
            break;
        }
    if (p == 0) p = q; // q itself is prime
    uint32_t m = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1)
        raise(ErrorCode::DomainError, std::to_string(q) + " is not a prime power");
    return FieldSpec::make_shared(p, m);
}

double tightness_gap(uint32_t n, uint32_t d, uint32_t q) {
    if (d < 2 || d > n)
        raise(ErrorCode::DomainError, "tightness gap needs 2 <= d <= n");
    const double delta = static_cast<double>(d - 1) / n;
    const double gv = gv_rate(delta, q); // DomainError past (q-1)/q
    const auto field = field_from_order(q);
    const double rhs_rate = 1.0 - rhs_5t_sum(n, d, field, {}) / n;
    return std::fabs(gv - rhs_rate);
}

std::vector<BoundCurve> curve_table(uint32_t q, uint32_t num_samples,
                                    std::optional<uint32_t> n_finite) {
    if (num_samples < 2)
        raise(ErrorCode::DomainError, "curve sampling needs num_samples >= 2");
    if (n_finite && *n_finite < 2)
        raise(ErrorCode::DomainError, "finite length must be >= 2");
    field_from_order(q); // q must be a prime power even for the gv-only table

    const double dmax = static_cast<double>(q - 1) / q;
    std::vector<double> deltas(num_samples);
    for (uint32_t i = 0; i < num_samples; ++i)
        deltas[i] = dmax * (static_cast<double>(i) / (num_samples - 1));

    std::vector<BoundCurve> out;

    if (n_finite && *n_finite <= 14) {
        const auto field = field_from_order(q);
        const uint32_t n = *n_finite;
        BoundCurve emp{q, "greedy-empirical", {}};
        for (double delta : deltas) {
            uint32_t d = static_cast<uint32_t>(std::floor(delta * n)) + 1;
            d = std::clamp<uint32_t>(d, 2, n);
            const CheckMatrix H = gv_greedy_construct(n, d, field);
            const uint32_t k = n - matrix_rank(H);
            RatePoint pt;
            pt.delta = delta;
            pt.rate = static_cast<double>(k) / n;
            pt.n = n;
            pt.gap = std::fabs(pt.rate - gv_rate(delta, q));
            emp.points.push_back(pt);
        }
        out.push_back(std::move(emp));
    }

    BoundCurve gv{q, "gv", {}};
    for (double delta : deltas)
        gv.points.push_back({delta, gv_rate(delta, q), std::nullopt, std::nullopt});
    out.push_back(std::move(gv));

    if (n_finite) {
        const auto field = field_from_order(q);
        const uint32_t n = *n_finite;
        BoundCurve rhs{q, "rhs5t", {}};
        for (double delta : deltas) {
            uint32_t d = static_cast<uint32_t>(std::floor(delta * n)) + 1;
            d = std::clamp<uint32_t>(d, 2, n);
            RatePoint pt;
            pt.delta = delta;
            pt.rate = 1.0 - rhs_5t_sum(n, d, field, {}) / n;
            pt.n = n;
            pt.gap = std::fabs(pt.rate - gv_rate(delta, q));
            rhs.points.push_back(pt);
        }
        out.push_back(std::move(rhs));
    }
    return out;
}

void write_curves_csv(std::ostream& out, const std::vector<BoundCurve>& curves) {
    out << "q,label,n,delta,rate,gap\n";
    char buf[64];
    const auto fmt = [&](double v) -> std::string {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    };
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            out << curve.q << "," << curve.label << ",";
            if (pt.n) out << *pt.n;
            out << "," << fmt(pt.delta) << "," << fmt(pt.rate) << ",";
            if (pt.gap) out << fmt(*pt.gap);
            out << "\n";
        }
    }
}

} // namespace gvlab

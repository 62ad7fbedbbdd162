#include "gvlab/indicator.hpp"

#include <cmath>

#include "gvlab/errors.hpp"
#include "gvlab/util.hpp"

namespace gvlab {

namespace {

// Inner products of every row of H with sigma; true iff all are zero.
std::vector<FieldElement> syndrome(const CheckMatrix& H,
                                   const std::vector<FieldElement>& sigma) {
    const FieldSpec& f = H.f();
    std::vector<FieldElement> out(H.r, 0);
    for (uint32_t j = 0; j < H.r; ++j)
        out[j] = f.vec_inner(H.rows[j], sigma);
    return out;
}

bool all_zero(const std::vector<FieldElement>& v) {
    for (FieldElement e : v)
        if (e != 0) return false;
    return true;
}

// Characteristic-2 cosine sum for one field element: each binary coordinate
// contributes cos(0) = 1 or cos(pi) = -1.
long char2_exponent_of(const FieldSpec& f, FieldElement e) {
    return static_cast<long>(f.m()) - 2 * __builtin_popcount(e);
}

long double general_exponent_of(const FieldSpec& f, FieldElement e, long double& err) {
    const auto c = f.coords(e);
    long double sum = 0.0L;
    for (uint32_t s = 0; s < f.m(); ++s) {
        sum += cosl(2.0L * M_PIl * static_cast<long double>(c[s]) /
                    static_cast<long double>(f.p()));
        err += 0x1.0p-62L;
    }
    return sum;
}

ExactScalar factor_from_syndrome(const CheckMatrix& H,
                                 const std::vector<FieldElement>& syn) {
    const FieldSpec& f = H.f();
    if (all_zero(syn))
        return ExactScalar::exact(Dyadic()); // exact zero, by membership
    if (f.is_char2()) {
        long e = 0;
        for (FieldElement s : syn) e += char2_exponent_of(f, s);
        const long rm = static_cast<long>(H.r) * f.m();
        return ExactScalar::exact(Dyadic::pow2(rm) - Dyadic::pow2(e));
    }
    long double err = 0.0L;
    long double e = 0.0L;
    for (FieldElement s : syn) e += general_exponent_of(f, s, err);
    const long double qr = powl(static_cast<long double>(f.q()), H.r);
    const long double pe = expl(e * logl(static_cast<long double>(f.p())));
    const long double perr = pe * (logl(static_cast<long double>(f.p())) * err + 0x1.0p-60L);
    return ExactScalar::approx(qr - pe, perr + qr * 0x1.0p-62L);
}

// q = 2, n <= 64 fast path: factors depend only on the number of rows with
// odd overlap, so the product collapses to a histogram power product.
Dyadic binary_product_from_counts(uint32_t r, const std::vector<uint64_t>& odd_counts) {
    if (odd_counts[0] > 0) return Dyadic();
    Dyadic prod(1);
    for (uint32_t j = 1; j <= r; ++j) {
        uint64_t e = odd_counts[j];
        if (e == 0) continue;
        // (2^r - 2^(r-2j)) = (2^(2j) - 1) * 2^(r-2j)
        mpz_class odd = 1;
        mpz_mul_2exp(odd.get_mpz_t(), odd.get_mpz_t(), 2 * j);
        odd -= 1;
        Dyadic base = Dyadic::scaled(odd, static_cast<long>(r) - 2 * static_cast<long>(j));
        Dyadic acc(1);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        prod = prod * acc;
    }
    return prod;
}

std::vector<uint64_t> row_masks(const CheckMatrix& H) {
    std::vector<uint64_t> masks(H.r, 0);
    for (uint32_t i = 0; i < H.r; ++i)
        for (uint32_t j = 0; j < H.n; ++j)
            if (H.rows[i][j]) masks[i] |= uint64_t(1) << j;
    return masks;
}

// All nonzero binary vectors of weight <= wmax as masks, weight-major in the
// canonical enumeration order.
std::vector<uint64_t> sigma_masks(uint32_t n, uint32_t wmax,
                                  const std::shared_ptr<const FieldSpec>& field,
                                  uint64_t budget) {
    LowWeightEnumerator en(n, 1, wmax, field, budget);
    std::vector<uint64_t> out;
    out.reserve(en.total_count());
    std::vector<FieldElement> v(n);
    while (en.next(v)) {
        uint64_t m = 0;
        for (uint32_t i = 0; i < n; ++i)
            if (v[i]) m |= uint64_t(1) << i;
        out.push_back(m);
    }
    return out;
}

Dyadic binary_indicator_product(const std::vector<uint64_t>& rows, uint32_t r,
                                const std::vector<uint64_t>& sigmas) {
    std::vector<uint64_t> counts(r + 1, 0);
    for (uint64_t s : sigmas) {
        uint32_t odd = 0;
        for (uint64_t row : rows) odd += __builtin_popcountll(row & s) & 1;
        ++counts[odd];
    }
    return binary_product_from_counts(r, counts);
}

void decode_matrix_index(uint64_t idx, uint32_t n, uint32_t r, uint32_t q,
                         CheckMatrix& M) {
    // Flat digit order: row-major, row 0 column 0 in the least significant
    // position.  This is the documented "matrix index ascending" order.
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            M.rows[i][j] = static_cast<FieldElement>(idx % q);
            idx /= q;
        }
}

uint64_t checked_matrix_space(uint32_t n, uint32_t r, uint32_t q) {
    unsigned __int128 space = 1;
    for (uint64_t i = 0; i < uint64_t(n) * r; ++i) {
        space *= q;
        if (space > (unsigned __int128)1 << 24)
            raise(ErrorCode::SizeGuard, "matrix space q^(r*n) exceeds 2^24");
    }
    return static_cast<uint64_t>(space);
}

} // namespace

ExactScalar cosine_exponent(const CheckMatrix& H, const std::vector<FieldElement>& sigma) {
    if (sigma.size() != H.n)
        raise(ErrorCode::LengthMismatch, "sigma length does not match the matrix");
    const FieldSpec& f = H.f();
    const auto syn = syndrome(H, sigma);
    if (f.is_char2()) {
        long e = 0;
        for (FieldElement s : syn) e += char2_exponent_of(f, s);
        return ExactScalar::exact(Dyadic(e));
    }
    long double err = 0.0L;
    long double e = 0.0L;
    for (FieldElement s : syn) e += general_exponent_of(f, s, err);
    return ExactScalar::approx(e, err);
}

ExactScalar indicator_factor(const CheckMatrix& H, const std::vector<FieldElement>& sigma) {
    if (sigma.size() != H.n)
        raise(ErrorCode::LengthMismatch, "sigma length does not match the matrix");
    return factor_from_syndrome(H, syndrome(H, sigma));
}

IndicatorReport indicator_product(const CheckMatrix& H, uint32_t d,
                                  uint64_t budget, bool keep_factors) {
    if (d < 2)
        raise(ErrorCode::DomainError, "indicator product requires d >= 2");
    IndicatorReport rep;
    rep.matrix = H;
    rep.d = d;

    const uint32_t wmax = std::min(d - 1, H.n);
    LowWeightEnumerator en(H.n, 1, wmax, H.field, budget);
    rep.factor_count = en.total_count();

    ExactScalar prod = ExactScalar::exact(Dyadic(1));
    std::vector<FieldElement> sigma(H.n);
    while (en.next(sigma)) {
        ExactScalar fac = indicator_factor(H, sigma);
        if (keep_factors) rep.factors.push_back(fac);
        prod = prod * fac;
        if (!keep_factors && prod.is_zero()) break;
    }
    rep.product = prod;
    rep.verdict = !prod.is_zero();
    return rep;
}

ExactScalar p_sum_exhaustive(uint32_t n, uint32_t r, uint32_t d,
                             std::shared_ptr<const FieldSpec> field,
                             unsigned workers, uint64_t budget) {
    if (d < 2 || n < 1)
        raise(ErrorCode::DomainError, "p_sum requires n >= 1 and d >= 2");
    const uint32_t q = field->q();
    const uint64_t space = checked_matrix_space(n, r, q);
    const uint32_t wmax = std::min(d - 1, n);

    if (q == 2 && n <= 64) {
        const auto sigmas = sigma_masks(n, wmax, field, budget);
        std::vector<Dyadic> partial(std::min<uint64_t>(workers ? workers : 1, space));
        parallel_chunks(space, workers, [&](unsigned chunk, uint64_t lo, uint64_t hi) {
            Dyadic sum;
            std::vector<uint64_t> rows(r, 0);
            for (uint64_t idx = lo; idx < hi; ++idx) {
                for (uint32_t i = 0; i < r; ++i)
                    rows[i] = (idx >> (uint64_t(i) * n)) & ((uint64_t(1) << n) - 1);
                sum = sum + binary_indicator_product(rows, r, sigmas);
            }
            partial[chunk] = std::move(sum);
        });
        Dyadic total;
        for (const auto& p : partial) total = total + p;
        return ExactScalar::exact(total);
    }

    // General field path: enumerate sigmas once, then walk the matrix space.
    std::vector<std::vector<FieldElement>> sigmas;
    {
        LowWeightEnumerator en(n, 1, wmax, field, budget);
        std::vector<FieldElement> v(n);
        while (en.next(v)) sigmas.push_back(v);
    }
    std::vector<ExactScalar> partial(std::min<uint64_t>(workers ? workers : 1, space));
    parallel_chunks(space, workers, [&](unsigned chunk, uint64_t lo, uint64_t hi) {
        ExactScalar sum = ExactScalar::exact(Dyadic());
        CheckMatrix M;
        M.field = field;
        M.n = n;
        M.r = r;
        M.rows.assign(r, std::vector<FieldElement>(n, 0));
        for (uint64_t idx = lo; idx < hi; ++idx) {
            decode_matrix_index(idx, n, r, q, M);
            ExactScalar prod = ExactScalar::exact(Dyadic(1));
            for (const auto& s : sigmas) {
                prod = prod * indicator_factor(M, s);
                if (prod.is_zero()) break;
            }
            sum = sum + prod;
        }
        partial[chunk] = std::move(sum);
    });
    ExactScalar total = ExactScalar::exact(Dyadic());
    for (const auto& p : partial) total = total + p;
    return total;
}

MonteCarloEstimate p_sum_monte_carlo(uint32_t n, uint32_t r, uint32_t d,
                                     std::shared_ptr<const FieldSpec> field,
                                     uint64_t samples, uint64_t seed,
                                     unsigned workers, uint64_t budget) {
    if (samples < 1)
        raise(ErrorCode::DomainError, "p_sum_monte_carlo requires samples >= 1");
    if (d < 2 || n < 1)
        raise(ErrorCode::DomainError, "p_sum requires n >= 1 and d >= 2");
    const uint32_t q = field->q();
    const uint32_t wmax = std::min(d - 1, n);
    const bool binary = (q == 2 && n <= 64);

    std::vector<uint64_t> sigmas_bin;
    std::vector<std::vector<FieldElement>> sigmas_gen;
    if (binary) {
        sigmas_bin = sigma_masks(n, wmax, field, budget);
    } else {
        LowWeightEnumerator en(n, 1, wmax, field, budget);
        std::vector<FieldElement> v(n);
        while (en.next(v)) sigmas_gen.push_back(v);
    }

    const uint64_t chunks = std::min<uint64_t>(workers ? workers : 1, samples);
    std::vector<Dyadic> psum(chunks), psum2(chunks);
    std::vector<long double> asum(chunks, 0.0L), asum2(chunks, 0.0L);
    parallel_chunks(samples, workers, [&](unsigned chunk, uint64_t lo, uint64_t hi) {
        Dyadic s1, s2;
        long double a1 = 0.0L, a2 = 0.0L;
        for (uint64_t i = lo; i < hi; ++i) {
            CheckMatrix M = random_matrix(n, r, field, mix_seed(seed, i));
            if (binary) {
                const Dyadic p =
                    binary_indicator_product(row_masks(M), r, sigmas_bin);
                s1 = s1 + p;
                s2 = s2 + p * p;
            } else {
                ExactScalar prod = ExactScalar::exact(Dyadic(1));
                for (const auto& s : sigmas_gen) {
                    prod = prod * indicator_factor(M, s);
                    if (prod.is_zero()) break;
                }
                const long double v = prod.value_ld();
                a1 += v;
                a2 += v * v;
            }
        }
        psum[chunk] = std::move(s1);
        psum2[chunk] = std::move(s2);
        asum[chunk] = a1;
        asum2[chunk] = a2;
    });

    long double s1 = 0.0L, s2 = 0.0L;
    if (binary) {
        Dyadic t1, t2;
        for (uint64_t c = 0; c < chunks; ++c) {
            t1 = t1 + psum[c];
            t2 = t2 + psum2[c];
        }
        s1 = t1.to_double();
        s2 = t2.to_double();
    } else {
        for (uint64_t c = 0; c < chunks; ++c) {
            s1 += asum[c];
            s2 += asum2[c];
        }
    }

    const long double scale = powl(static_cast<long double>(q), static_cast<long double>(r) * n);
    const long double nn = static_cast<long double>(samples);
    MonteCarloEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.estimate = static_cast<double>(scale * s1 / nn);
    if (samples > 1) {
        long double var = (s2 - s1 * s1 / nn) / (nn - 1.0L);
        if (var < 0.0L) var = 0.0L; // rounding guard
        est.std_error = static_cast<double>(scale * sqrtl(var / nn));
    }
    return est;
}

Polynomial expand_indicator_product(const CheckMatrix& H, uint32_t d, uint64_t budget) {
    const FieldSpec& f = H.f();
    if (!f.is_char2())
        raise(ErrorCode::UnsupportedField,
              "expansion needs exact dyadic factor roots (characteristic 2)");
    if (d < 2)
        raise(ErrorCode::DomainError, "expansion requires d >= 2");
    const uint32_t wmax = std::min(d - 1, H.n);
    LowWeightEnumerator en(H.n, 1, wmax, H.field, budget);
    if (en.total_count() > 64)
        raise(ErrorCode::SizeGuard, "expansion limited to 64 factors");

    Polynomial p = Polynomial::from_terms({{0, mpq_class(1)}});
    std::vector<FieldElement> sigma(H.n);
    while (en.next(sigma)) {
        const auto syn = syndrome(H, sigma);
        long e = 0;
        for (FieldElement s : syn) e += char2_exponent_of(f, s);
        p = p.mul_linear(Dyadic::pow2(e).to_rational());
    }
    return p;
}

Dyadic max_factor_root(const CheckMatrix& H, uint32_t d, uint64_t budget) {
    const FieldSpec& f = H.f();
    if (!f.is_char2())
        raise(ErrorCode::UnsupportedField, "factor roots are dyadic only in characteristic 2");
    const uint32_t wmax = std::min(d - 1, H.n);
    LowWeightEnumerator en(H.n, 1, wmax, H.field, budget);
    std::vector<FieldElement> sigma(H.n);
    bool any = false;
    long best = 0;
    while (en.next(sigma)) {
        const auto syn = syndrome(H, sigma);
        long e = 0;
        for (FieldElement s : syn) e += char2_exponent_of(f, s);
        if (!any || e > best) best = e;
        any = true;
    }
    if (!any)
        raise(ErrorCode::Internal, "no sigma enumerated");
    return Dyadic::pow2(best);
}

IndicatorVerifyResult verify_indicator(uint32_t n, uint32_t r,
                                       std::optional<uint32_t> d_fixed,
                                       std::shared_ptr<const FieldSpec> field,
                                       std::optional<uint64_t> sample_count,
                                       uint64_t seed, unsigned workers) {
    const uint32_t q = field->q();
    if (n < 2)
        raise(ErrorCode::DomainError, "verification needs n >= 2");
    if (d_fixed && (*d_fixed < 2 || *d_fixed > n))
        raise(ErrorCode::DomainError, "fixed d must be in [2, n]");

    uint64_t total;
    if (sample_count) {
        total = *sample_count;
    } else {
        total = checked_matrix_space(n, r, q);
    }

    std::vector<uint32_t> ds;
    if (d_fixed) {
        ds.push_back(*d_fixed);
    } else {
        for (uint32_t d = 2; d <= n; ++d) ds.push_back(d);
    }

    const uint64_t chunks = std::min<uint64_t>(workers ? workers : 1, total);
    std::vector<IndicatorVerifyResult> partial(chunks);
    parallel_chunks(total, workers, [&](unsigned chunk, uint64_t lo, uint64_t hi) {
        IndicatorVerifyResult res;
        CheckMatrix M;
        M.field = field;
        M.n = n;
        M.r = r;
        M.rows.assign(r, std::vector<FieldElement>(n, 0));
        for (uint64_t idx = lo; idx < hi; ++idx) {
            if (sample_count) {
                M = random_matrix(n, r, field, mix_seed(seed, idx));
            } else {
                decode_matrix_index(idx, n, r, q, M);
            }
            // Brute-force side: exact minimum distance; k = 0 means no
            // nonzero codeword at all, so d_min >= d holds vacuously.
            uint32_t dmin = n + 1;
            try {
                dmin = min_distance(M).d_min;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::TrivialCode) throw;
            }
            for (uint32_t d : ds) {
                const IndicatorReport rep =
                    indicator_product(M, d, /*budget=*/0, /*keep_factors=*/false);
                ++res.comparisons;
                if (rep.verdict != (dmin >= d)) ++res.mismatches;
            }
            ++res.matrices;
        }
        partial[chunk] = res;
    });

    IndicatorVerifyResult out;
    for (const auto& p : partial) {
        out.matrices += p.matrices;
        out.comparisons += p.comparisons;
        out.mismatches += p.mismatches;
    }
    return out;
}

} // namespace gvlab

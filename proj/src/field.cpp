#include "gvlab/field.hpp"

#include <algorithm>

#include "gvlab/errors.hpp"

namespace gvlab {

namespace {

constexpr uint64_t kMaxFieldSize = uint64_t(1) << 16;

// Saturating p^m so oversized requests fail cleanly.
uint64_t pow_sat(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    while (e--) {
        if (r > kMaxFieldSize) return kMaxFieldSize + 1;
        r *= base;
    }
    return r;
}

// Remainder of a by monic divisor d, both dense coefficient vectors over F_p
// (index = degree).  Leading zeros of the result are kept; only values matter.
std::vector<uint32_t> poly_mod(std::vector<uint32_t> a, const std::vector<uint32_t>& d,
                               uint32_t p) {
    const size_t dd = d.size() - 1;
    for (size_t i = a.size(); i-- > dd;) {
        const uint32_t c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (size_t j = 0; j < dd; ++j) {
            const uint64_t sub = (uint64_t)c * d[j] % p;
            a[i - dd + j] = static_cast<uint32_t>((a[i - dd + j] + p - sub) % p);
        }
    }
    a.resize(dd);
    return a;
}

bool is_zero_poly(const std::vector<uint32_t>& a) {
    return std::all_of(a.begin(), a.end(), [](uint32_t c) { return c == 0; });
}

} // namespace

bool is_prime_u32(uint32_t v) {
    if (v < 2) return false;
    for (uint64_t f = 2; f * f <= v; ++f)
        if (v % f == 0) return false;
    return true;
}

bool poly_is_irreducible(const std::vector<uint32_t>& coeffs, uint32_t p) {
    const size_t m = coeffs.size() - 1;
    if (m == 1) return true;
    if (coeffs[0] == 0) return false; // divisible by x
    for (size_t e = 1; e < m; ++e) {
        uint64_t count = 1;
        for (size_t i = 0; i < e; ++i) count *= p;
        std::vector<uint32_t> div(e + 1, 0);
        div[e] = 1;
        for (uint64_t v = 0; v < count; ++v) {
            uint64_t t = v;
            for (size_t i = 0; i < e; ++i) {
                div[i] = static_cast<uint32_t>(t % p);
                t /= p;
            }
            if (is_zero_poly(poly_mod(coeffs, div, p)))
                return false;
        }
    }
    return true;
}

FieldSpec FieldSpec::make(uint32_t p, uint32_t m,
                          std::optional<std::vector<uint32_t>> modulus) {
    if (!is_prime_u32(p))
        raise(ErrorCode::NonPrimeCharacteristic,
              "field characteristic " + std::to_string(p) + " is not prime");
    if (m < 1)
        raise(ErrorCode::DomainError, "extension degree must be >= 1");
    const uint64_t q = pow_sat(p, m);
    if (q > kMaxFieldSize)
        raise(ErrorCode::UnsupportedSize,
              "field order p^m exceeds 2^16 (p=" + std::to_string(p) +
                  ", m=" + std::to_string(m) + ")");

    FieldSpec f;
    f.p_ = p;
    f.m_ = m;
    f.q_ = static_cast<uint32_t>(q);

    if (modulus) {
        auto& mod = *modulus;
        if (mod.size() != m + 1 || mod[m] != 1)
            raise(ErrorCode::DomainError, "modulus must be monic of degree m");
        for (uint32_t c : mod)
            if (c >= p)
                raise(ErrorCode::DomainError, "modulus coefficient out of range");
        if (!poly_is_irreducible(mod, p))
            raise(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
        f.modulus_ = std::move(mod);
    } else {
        // Smallest packed coefficient vector that is irreducible.
        std::vector<uint32_t> mod(m + 1, 0);
        mod[m] = 1;
        if (m == 1) {
            f.modulus_ = std::move(mod); // x itself; unused in prime fields
        } else {
            bool found = false;
            for (uint64_t v = 0; v < q && !found; ++v) {
                uint64_t t = v;
                for (uint32_t i = 0; i < m; ++i) {
                    mod[i] = static_cast<uint32_t>(t % p);
                    t /= p;
                }
                found = poly_is_irreducible(mod, p);
            }
            if (!found)
                raise(ErrorCode::Internal, "no irreducible modulus found"); // unreachable
            f.modulus_ = std::move(mod);
        }
    }

    f.build_tables();
    return f;
}

std::shared_ptr<const FieldSpec>
FieldSpec::make_shared(uint32_t p, uint32_t m,
                       std::optional<std::vector<uint32_t>> modulus) {
    return std::make_shared<const FieldSpec>(make(p, m, std::move(modulus)));
}

void FieldSpec::build_tables() {
    if (q_ > 256) return;
    add_tab_.resize(size_t(q_) * q_);
    mul_tab_.resize(size_t(q_) * q_);
    inv_tab_.assign(q_, 0);
    for (uint32_t a = 0; a < q_; ++a) {
        for (uint32_t b = 0; b < q_; ++b) {
            uint32_t s;
            if (p_ == 2) {
                s = a ^ b;
            } else {
                s = 0;
                uint32_t mulp = 1, x = a, y = b;
                for (uint32_t i = 0; i < m_; ++i) {
                    s += (x % p_ + y % p_) % p_ * mulp;
                    x /= p_;
                    y /= p_;
                    mulp *= p_;
                }
            }
            add_tab_[size_t(a) * q_ + b] = static_cast<uint16_t>(s);
            const uint32_t prod = mul_direct(a, b);
            mul_tab_[size_t(a) * q_ + b] = static_cast<uint16_t>(prod);
            if (prod == 1)
                inv_tab_[a] = static_cast<uint16_t>(b);
        }
    }
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
    if (p_ == 2) return a ^ b;
    if (!add_tab_.empty()) return add_tab_[size_t(a) * q_ + b];
    uint32_t s = 0, mulp = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        s += (a % p_ + b % p_) % p_ * mulp;
        a /= p_;
        b /= p_;
        mulp *= p_;
    }
    return s;
}

FieldElement FieldSpec::neg(FieldElement a) const {
    if (p_ == 2) return a;
    uint32_t s = 0, mulp = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        const uint32_t c = a % p_;
        s += (c == 0 ? 0 : p_ - c) * mulp;
        a /= p_;
        mulp *= p_;
    }
    return s;
}

FieldElement FieldSpec::mul_direct(FieldElement a, FieldElement b) const {
    // Schoolbook product of coordinate polynomials, reduced by the modulus.
    std::vector<uint32_t> prod(2 * m_ - 1, 0);
    std::vector<uint32_t> ac(m_), bc(m_);
    uint32_t x = a, y = b;
    for (uint32_t i = 0; i < m_; ++i) {
        ac[i] = x % p_;
        bc[i] = y % p_;
        x /= p_;
        y /= p_;
    }
    for (uint32_t i = 0; i < m_; ++i) {
        if (ac[i] == 0) continue;
        for (uint32_t j = 0; j < m_; ++j)
            prod[i + j] = static_cast<uint32_t>((prod[i + j] + (uint64_t)ac[i] * bc[j]) % p_);
    }
    if (m_ > 1)
        prod = poly_mod(std::move(prod), modulus_, p_);
    uint32_t r = 0, mulp = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        r += prod[i] * mulp;
        mulp *= p_;
    }
    return r;
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
    if (!mul_tab_.empty()) return mul_tab_[size_t(a) * q_ + b];
    return mul_direct(a, b);
}

FieldElement FieldSpec::inv(FieldElement a) const {
    if (a == 0)
        raise(ErrorCode::ZeroInverse, "inverse of zero field element");
    if (!inv_tab_.empty()) return inv_tab_[a];
    // a^(q-2) by square and multiply
    FieldElement r = 1, base = a;
    uint32_t e = q_ - 2;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::vector<uint32_t> FieldSpec::coords(FieldElement a) const {
    std::vector<uint32_t> c(m_);
    for (uint32_t i = 0; i < m_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

FieldElement FieldSpec::from_coords(std::span<const uint32_t> c) const {
    if (c.size() != m_)
        raise(ErrorCode::LengthMismatch, "coordinate tuple has wrong length");
    uint32_t r = 0, mulp = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        if (c[i] >= p_)
            raise(ErrorCode::DomainError, "coordinate out of range");
        r += c[i] * mulp;
        mulp *= p_;
    }
    return r;
}

FieldElement FieldSpec::vec_inner(std::span<const FieldElement> u,
                                  std::span<const FieldElement> v) const {
    if (u.size() != v.size())
        raise(ErrorCode::LengthMismatch, "inner product of unequal-length vectors");
    FieldElement acc = 0;
    for (size_t i = 0; i < u.size(); ++i)
        acc = add(acc, mul(u[i], v[i]));
    return acc;
}

} // namespace gvlab

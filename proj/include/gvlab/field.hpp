#ifndef GVLAB_FIELD_HPP
#define GVLAB_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace gvlab {

// A field element is a coordinate tuple over the basis {1, a, ..., a^{m-1}}
// (a = root of the modulus), packed into one integer as sum coords[s] * p^s.
// The packing is positional only; it is not a discrete-log representation.
using FieldElement = uint32_t;

// F_{p^m} with p prime, m >= 1 and q = p^m <= 2^16.  Immutable after
// construction; all operations are pure and safe to call concurrently.
class FieldSpec {
  public:
    // modulus, when given, is the full coefficient list c0..cm of a monic
    // degree-m polynomial over F_p (cm = 1).  When omitted, the irreducible
    // with the smallest packed coefficient value sum c_s * p^s is used, so
    // the default field is identical across runs and platforms.
    static FieldSpec make(uint32_t p, uint32_t m,
                          std::optional<std::vector<uint32_t>> modulus = std::nullopt);

    static std::shared_ptr<const FieldSpec>
    make_shared(uint32_t p, uint32_t m,
                std::optional<std::vector<uint32_t>> modulus = std::nullopt);

    uint32_t p() const { return p_; }
    uint32_t m() const { return m_; }
    uint32_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    bool is_char2() const { return p_ == 2; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement inv(FieldElement a) const; // ZeroInverse on a == 0

    // The m residues (a)_1 ... (a)_m; all zero iff a == 0.
    std::vector<uint32_t> coords(FieldElement a) const;
    FieldElement from_coords(std::span<const uint32_t> c) const;

    // sum_i u_i * v_i; LengthMismatch unless |u| == |v|.
    FieldElement vec_inner(std::span<const FieldElement> u,
                           std::span<const FieldElement> v) const;

  private:
    FieldSpec() = default;
    void build_tables();
    FieldElement mul_direct(FieldElement a, FieldElement b) const;

    uint32_t p_ = 2;
    uint32_t m_ = 1;
    uint32_t q_ = 2;
    std::vector<uint32_t> modulus_; // c0..cm, monic

    // Dense tables for q <= 256, where the exhaustive harnesses live.
    std::vector<uint16_t> mul_tab_;
    std::vector<uint16_t> add_tab_;
    std::vector<uint16_t> inv_tab_;
};

bool is_prime_u32(uint32_t v);

// Trial division by every lower-degree monic polynomial over F_p.
bool poly_is_irreducible(const std::vector<uint32_t>& coeffs, uint32_t p);

} // namespace gvlab

#endif

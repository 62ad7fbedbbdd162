#include <doctest.h>

#include "gvlab/errors.hpp"
#include "gvlab/field.hpp"
#include "gvlab/util.hpp"

using namespace gvlab;

namespace {

// F_4 with modulus x^2 + x + 1; alpha is packed index 2 (coords (0,1)).
FieldSpec f4() { return FieldSpec::make(2, 2, std::vector<uint32_t>{1, 1, 1}); }

} // namespace

TEST_CASE("field_make basics") {
    const FieldSpec f2 = FieldSpec::make(2, 1);
    CHECK(f2.q() == 2);

    const FieldSpec f = f4();
    CHECK(f.q() == 4);
    CHECK(f.modulus() == std::vector<uint32_t>{1, 1, 1});

    // Default modulus search must find the same polynomial (the unique
    // degree-2 irreducible over F_2).
    const FieldSpec fd = FieldSpec::make(2, 2);
    CHECK(fd.modulus() == std::vector<uint32_t>{1, 1, 1});

    CHECK_THROWS_AS(FieldSpec::make(4, 1), Error);
    CHECK_THROWS_WITH_AS(FieldSpec::make(4, 1), doctest::Contains("not prime"), Error);
    CHECK_THROWS_AS(FieldSpec::make(2, 17), Error); // 2^17 > 2^16
    // x^2 + 1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(FieldSpec::make(2, 2, std::vector<uint32_t>{1, 0, 1}), Error);
}

TEST_CASE("F_4 arithmetic matches the reduction by x^2+x+1") {
    const FieldSpec f = f4();
    const FieldElement alpha = 2;          // coords (0,1)
    const FieldElement alpha_plus_1 = 3;   // coords (1,1)
    CHECK(f.mul(alpha, alpha) == alpha_plus_1);
    CHECK(f.inv(alpha) == alpha_plus_1);
    CHECK(f.mul(alpha, alpha_plus_1) == 1);

    const FieldSpec f2 = FieldSpec::make(2, 1);
    CHECK(f2.add(1, 1) == 0);
    CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("coordinate decomposition") {
    const FieldSpec f = f4();
    CHECK(f.coords(2) == std::vector<uint32_t>{0, 1});
    CHECK(f.coords(0) == std::vector<uint32_t>{0, 0});
    const FieldSpec f2 = FieldSpec::make(2, 1);
    CHECK(f2.coords(1) == std::vector<uint32_t>{1});
}

TEST_CASE("vector inner products") {
    const FieldSpec f2 = FieldSpec::make(2, 1);
    const std::vector<FieldElement> u{1, 1, 0}, v{1, 0, 1}, w{1, 1, 0}, z{0, 0, 0};
    CHECK(f2.vec_inner(u, v) == 1);
    CHECK(f2.vec_inner(u, w) == 0); // even overlap
    CHECK(f2.vec_inner(u, z) == 0);
    const std::vector<FieldElement> short_vec{1};
    CHECK_THROWS_AS(f2.vec_inner(u, short_vec), Error);
}

TEST_CASE("inverse and coordinate bijection, exhaustive for q <= 256") {
    for (const auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1},
                              {2, 4},
                              {2, 8},
                              {3, 1},
                              {3, 4},
                              {5, 3},
                              {7, 2},
                              {13, 2},
                              {251, 1}}) {
        const FieldSpec f = FieldSpec::make(p, m);
        CAPTURE(p);
        CAPTURE(m);
        for (FieldElement a = 1; a < f.q(); ++a)
            REQUIRE(f.mul(a, f.inv(a)) == 1);
        for (FieldElement a = 0; a < f.q(); ++a)
            REQUIRE(f.from_coords(f.coords(a)) == a);
        // associativity/commutativity spot checks on a few triples
        SplitMix64 g(p * 1000 + m);
        for (int t = 0; t < 50; ++t) {
            const FieldElement a = static_cast<FieldElement>(g.below(f.q()));
            const FieldElement b = static_cast<FieldElement>(g.below(f.q()));
            const FieldElement c = static_cast<FieldElement>(g.below(f.q()));
            REQUIRE(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            REQUIRE(f.add(a, b) == f.add(b, a));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST_CASE("inner product is bilinear on random vectors") {
    const auto field = FieldSpec::make_shared(3, 2); // F_9
    const FieldSpec& f = *field;
    SplitMix64 g(7);
    for (int t = 0; t < 200; ++t) {
        const uint32_t n = 1 + static_cast<uint32_t>(g.below(8));
        std::vector<FieldElement> u(n), v(n), w(n), vw(n);
        for (uint32_t i = 0; i < n; ++i) {
            u[i] = static_cast<FieldElement>(g.below(f.q()));
            v[i] = static_cast<FieldElement>(g.below(f.q()));
            w[i] = static_cast<FieldElement>(g.below(f.q()));
            vw[i] = f.add(v[i], w[i]);
        }
        REQUIRE(f.vec_inner(u, vw) == f.add(f.vec_inner(u, v), f.vec_inner(u, w)));
        REQUIRE(f.vec_inner(u, v) == f.vec_inner(v, u));
    }
}

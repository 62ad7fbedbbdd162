#include <doctest.h>

#include <set>
#include <sstream>

#include "gvlab/codes.hpp"
#include "gvlab/curves.hpp"
#include "gvlab/errors.hpp"
#include "gvlab/util.hpp"

using namespace gvlab;

namespace {

std::shared_ptr<const FieldSpec> f2() {
    static auto f = FieldSpec::make_shared(2, 1);
    return f;
}

CheckMatrix matrix_from_rows(std::shared_ptr<const FieldSpec> field,
                             std::vector<std::vector<FieldElement>> rows, uint32_t n) {
    CheckMatrix M;
    M.field = std::move(field);
    M.n = n;
    M.r = static_cast<uint32_t>(rows.size());
    M.rows = std::move(rows);
    return M;
}

// [7,4] Hamming check matrix: columns are all nonzero binary triples.
CheckMatrix hamming74() {
    return matrix_from_rows(f2(),
                            {{0, 0, 0, 1, 1, 1, 1},
                             {0, 1, 1, 0, 0, 1, 1},
                             {1, 0, 1, 0, 1, 0, 1}},
                            7);
}

CheckMatrix binary_from_index(uint64_t idx, uint32_t n, uint32_t r) {
    CheckMatrix M;
    M.field = f2();
    M.n = n;
    M.r = r;
    M.rows.assign(r, std::vector<FieldElement>(n, 0));
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            M.rows[i][j] = idx & 1;
            idx >>= 1;
        }
    return M;
}

} // namespace

TEST_CASE("min_distance on the named cases") {
    const CodeSummary ham = min_distance(hamming74());
    CHECK(ham.d_min == 3);
    CHECK(ham.k == 4);
    CHECK(ham.rate == doctest::Approx(4.0 / 7.0));

    const CodeSummary zero = min_distance(matrix_from_rows(f2(), {{0, 0, 0}, {0, 0, 0}}, 3));
    CHECK(zero.d_min == 1);
    CHECK(zero.k == 3);

    const CodeSummary parity = min_distance(matrix_from_rows(f2(), {{1, 1, 1, 1, 1}}, 5));
    CHECK(parity.d_min == 2);
    CHECK(parity.k == 4);

    // identity: null space is {0}
    CHECK_THROWS_AS(min_distance(matrix_from_rows(f2(), {{1, 0}, {0, 1}}, 2)), Error);

    // budget guard
    CHECK_THROWS_AS(min_distance(hamming74(), /*budget=*/2), Error);
}

TEST_CASE("min_distance_oracle on the named cases") {
    CHECK(min_distance_oracle(matrix_from_rows(f2(), {{1, 1, 1, 1, 1}}, 5)) == 5);
    CHECK(min_distance_oracle(
              matrix_from_rows(f2(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)) == 1);
    const CheckMatrix G = null_space_basis(hamming74());
    CHECK(G.r == 4);
    CHECK(min_distance_oracle(G) == 3);
}

TEST_CASE("oracle equivalence, exhaustive for n <= 5 and sampled for n in {6,7}") {
    const auto check_one = [](const CheckMatrix& H) {
        uint32_t d_probe = 0, d_oracle = 0;
        bool trivial_probe = false, trivial_oracle = false;
        try {
            d_probe = min_distance(H).d_min;
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::TrivialCode);
            trivial_probe = true;
        }
        try {
            d_oracle = min_distance_oracle(null_space_basis(H));
        } catch (const Error& e) {
            REQUIRE(e.code() == ErrorCode::TrivialCode);
            trivial_oracle = true;
        }
        REQUIRE(trivial_probe == trivial_oracle);
        if (!trivial_probe) REQUIRE(d_probe == d_oracle);
    };

    for (uint32_t n = 2; n <= 5; ++n)
        for (uint32_t r = 1; r <= 3; ++r)
            for (uint64_t idx = 0; idx < (uint64_t(1) << (n * r)); ++idx)
                check_one(binary_from_index(idx, n, r));

    SplitMix64 g(2024);
    for (uint32_t n : {6u, 7u})
        for (int t = 0; t < 10000; ++t) {
            const uint32_t r = 1 + static_cast<uint32_t>(g.below(3));
            check_one(random_matrix(n, r, f2(), g.next()));
        }
}

TEST_CASE("low-weight enumeration: counts, order, restartability") {
    SUBCASE("named counts") {
        CHECK(LowWeightEnumerator::count(3, 1, 2, 2) == 6);
        CHECK(LowWeightEnumerator::count(2, 1, 1, 3) == 4);
        CHECK(LowWeightEnumerator::count(3, 1, 3, 2) == 7);
    }

    SUBCASE("canonical order for (3, 2, F_2)") {
        LowWeightEnumerator en(3, 1, 2, f2());
        std::vector<std::vector<FieldElement>> got;
        std::vector<FieldElement> v;
        while (en.next(v)) got.push_back(v);
        const std::vector<std::vector<FieldElement>> want{
            {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
        CHECK(got == want);
    }

    SUBCASE("canonical order for (2, 1, F_3): values tick before support") {
        const auto f3 = FieldSpec::make_shared(3, 1);
        LowWeightEnumerator en(2, 1, 1, f3);
        std::vector<std::vector<FieldElement>> got;
        std::vector<FieldElement> v;
        while (en.next(v)) got.push_back(v);
        const std::vector<std::vector<FieldElement>> want{{1, 0}, {2, 0}, {0, 1}, {0, 2}};
        CHECK(got == want);
    }

    SUBCASE("per-weight totals match the closed form for n <= 10, q in {2,3,4}") {
        for (uint32_t q : {2u, 3u, 4u}) {
            const auto field = field_from_order(q);
            for (uint32_t n = 1; n <= 10; ++n) {
                std::vector<uint64_t> per_weight(n + 1, 0);
                LowWeightEnumerator en(n, 1, n, field, uint64_t(1) << 30);
                std::vector<FieldElement> v;
                while (en.next(v)) {
                    uint32_t w = 0;
                    for (FieldElement e : v) w += (e != 0);
                    ++per_weight[w];
                }
                uint64_t cum = 0;
                for (uint32_t wmax = 1; wmax <= n; ++wmax) {
                    cum += per_weight[wmax];
                    REQUIRE(cum == LowWeightEnumerator::count(n, 1, wmax, q));
                }
            }
        }
    }

    SUBCASE("cursor seek resumes the identical stream") {
        const auto f3 = FieldSpec::make_shared(3, 1);
        LowWeightEnumerator full(5, 1, 4, f3);
        std::vector<std::vector<FieldElement>> whole;
        std::vector<FieldElement> v;
        while (full.next(v)) whole.push_back(v);

        LowWeightEnumerator head(5, 1, 4, f3);
        for (int i = 0; i < 37; ++i) head.next(v);
        const auto cur = head.cursor();

        LowWeightEnumerator tail(5, 1, 4, f3);
        tail.seek(cur);
        size_t pos = 37;
        while (tail.next(v)) {
            REQUIRE(v == whole[pos]);
            ++pos;
        }
        REQUIRE(pos == whole.size());
    }

    SUBCASE("size guard") {
        CHECK_THROWS_AS(LowWeightEnumerator(40, 1, 20, f2(), /*budget=*/1000), Error);
    }
}

TEST_CASE("greedy construction: named shapes") {
    const CheckMatrix ham = gv_greedy_construct(7, 3, f2());
    CHECK(ham.r == 3);
    // all columns distinct and nonzero
    std::set<uint32_t> cols;
    for (uint32_t j = 0; j < 7; ++j) {
        uint32_t packed = 0;
        for (uint32_t i = 0; i < 3; ++i) packed = packed * 2 + ham.rows[i][j];
        CHECK(packed != 0);
        cols.insert(packed);
    }
    CHECK(cols.size() == 7);

    const CheckMatrix parity = gv_greedy_construct(6, 2, f2());
    CHECK(parity.r == 1);
    CHECK(min_distance(parity).d_min == 2);

    const CheckMatrix rep = gv_greedy_construct(5, 5, f2());
    CHECK(rep.r == 4);
    const CodeSummary s = min_distance(rep);
    CHECK(s.k == 1);
    CHECK(s.d_min == 5);

    CHECK_THROWS_AS(gv_greedy_construct(5, 1, f2()), Error); // d = 1 excluded
    CHECK_THROWS_AS(gv_greedy_construct(5, 6, f2()), Error); // d > n
}

TEST_CASE("greedy construction: GV validity on a subset grid") {
    // Full n <= 12 grid runs in the acceptance suite; spot-check here.
    for (uint32_t q : {2u, 3u, 4u}) {
        const auto field = field_from_order(q);
        for (uint32_t n = 2; n <= 9; ++n)
            for (uint32_t d = 2; d <= n; ++d) {
                const CheckMatrix H = gv_greedy_construct(n, d, field);
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(d);
                REQUIRE(min_distance_at_least(H, d));
                // q^r <= q * Vol_q(n-1, d-2)
                mpz_class qr = 1;
                for (uint32_t i = 0; i < H.r; ++i) qr *= q;
                REQUIRE(qr <= q * ball_volume(n - 1, d - 2, q));
            }
    }
}

TEST_CASE("random matrices are seed-deterministic") {
    const CheckMatrix a = random_matrix(3, 2, f2(), 42);
    const CheckMatrix b = random_matrix(3, 2, f2(), 42);
    CHECK(a.rows == b.rows);
    const CheckMatrix c = random_matrix(3, 2, f2(), 43);
    CHECK(a.rows != c.rows);

    const CheckMatrix single = random_matrix(1, 1, f2(), 7);
    CHECK(single.rows[0][0] <= 1);

    // entries hit every field value eventually
    const auto f9 = FieldSpec::make_shared(3, 2);
    const CheckMatrix big = random_matrix(40, 40, f9, 1);
    std::set<FieldElement> seen;
    for (const auto& row : big.rows)
        for (FieldElement e : row) {
            CHECK(e < 9);
            seen.insert(e);
        }
    CHECK(seen.size() == 9);
}

TEST_CASE("matrix text round trip") {
    SplitMix64 g(11);
    for (const auto [p, m] : {std::pair<uint32_t, uint32_t>{2, 1}, {2, 2}, {3, 1}, {5, 2}}) {
        const auto field = FieldSpec::make_shared(p, m);
        for (int t = 0; t < 20; ++t) {
            const uint32_t n = 1 + static_cast<uint32_t>(g.below(6));
            const uint32_t r = static_cast<uint32_t>(g.below(4));
            const CheckMatrix M = random_matrix(n, r, field, g.next());
            std::stringstream ss;
            write_matrix_text(ss, M);
            const CheckMatrix back = read_matrix_text(ss);
            REQUIRE(back.n == M.n);
            REQUIRE(back.r == M.r);
            REQUIRE(back.rows == M.rows);
            REQUIRE(back.f().q() == M.f().q());
        }
    }

    std::stringstream bad("2 1 3"); // truncated header
    CHECK_THROWS_AS(read_matrix_text(bad), Error);
    std::stringstream bad2("2 1 2 1\n1 2\n"); // residue out of range
    CHECK_THROWS_AS(read_matrix_text(bad2), Error);
}

#include "gvlab/codes.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "gvlab/errors.hpp"
#include "gvlab/util.hpp"

namespace gvlab {

namespace {

constexpr uint64_t kSat = uint64_t(1) << 62;

uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSat / b) return kSat;
    return a * b;
}

uint64_t sat_add(uint64_t a, uint64_t b) {
    return (a > kSat - b) ? kSat : a + b;
}

uint64_t sat_pow(uint64_t base, uint32_t e) {
    uint64_t r = 1;
    while (e--) r = sat_mul(r, base);
    return r;
}

bool next_combination(std::vector<uint32_t>& c, uint32_t n) {
    const uint32_t w = static_cast<uint32_t>(c.size());
    int i = static_cast<int>(w) - 1;
    while (i >= 0 && c[i] == n - w + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (uint32_t j = i + 1; j < w; ++j) c[j] = c[j - 1] + 1;
    return true;
}

// Lexicographic unranking via the combinatorial number system.
std::vector<uint32_t> unrank_combination(uint32_t n, uint32_t w, uint64_t rank) {
    std::vector<uint32_t> c(w);
    uint32_t v = 0;
    for (uint32_t i = 0; i < w; ++i) {
        while (true) {
            const uint64_t block = binom_u64(n - 1 - v, w - 1 - i);
            if (rank < block) break;
            rank -= block;
            ++v;
        }
        c[i] = v++;
    }
    return c;
}

// Syndrome test H * sigma == 0 with per-row early exit.
bool in_null_space(const CheckMatrix& H, const std::vector<FieldElement>& sigma) {
    const FieldSpec& f = H.f();
    for (const auto& row : H.rows) {
        FieldElement acc = 0;
        for (uint32_t i = 0; i < H.n; ++i)
            if (sigma[i] != 0)
                acc = f.add(acc, f.mul(row[i], sigma[i]));
        if (acc != 0) return false;
    }
    return true;
}

} // namespace

uint64_t binom_u64(uint64_t n, uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (uint64_t i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
        if (r > (unsigned __int128)kSat) return kSat;
    }
    return static_cast<uint64_t>(r);
}

uint32_t matrix_rank(const CheckMatrix& M) {
    const FieldSpec& f = M.f();
    auto rows = M.rows;
    uint32_t rank = 0;
    for (uint32_t col = 0; col < M.n && rank < M.r; ++col) {
        uint32_t pivot = rank;
        while (pivot < M.r && rows[pivot][col] == 0) ++pivot;
        if (pivot == M.r) continue;
        std::swap(rows[rank], rows[pivot]);
        const FieldElement pinv = f.inv(rows[rank][col]);
        for (uint32_t j = col; j < M.n; ++j)
            rows[rank][j] = f.mul(rows[rank][j], pinv);
        for (uint32_t i = 0; i < M.r; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const FieldElement factor = rows[i][col];
            for (uint32_t j = col; j < M.n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

CheckMatrix null_space_basis(const CheckMatrix& H) {
    const FieldSpec& f = H.f();
    auto rows = H.rows;
    std::vector<uint32_t> pivot_col;
    uint32_t rank = 0;
    for (uint32_t col = 0; col < H.n && rank < H.r; ++col) {
        uint32_t pivot = rank;
        while (pivot < H.r && rows[pivot][col] == 0) ++pivot;
        if (pivot == H.r) continue;
        std::swap(rows[rank], rows[pivot]);
        const FieldElement pinv = f.inv(rows[rank][col]);
        for (uint32_t j = col; j < H.n; ++j)
            rows[rank][j] = f.mul(rows[rank][j], pinv);
        for (uint32_t i = 0; i < H.r; ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const FieldElement factor = rows[i][col];
            for (uint32_t j = col; j < H.n; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(factor, rows[rank][j]));
        }
        pivot_col.push_back(col);
        ++rank;
    }

    CheckMatrix G;
    G.field = H.field;
    G.n = H.n;
    std::vector<bool> is_pivot(H.n, false);
    for (uint32_t c : pivot_col) is_pivot[c] = true;
    for (uint32_t free = 0; free < H.n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> g(H.n, 0);
        g[free] = 1;
        for (uint32_t i = 0; i < rank; ++i)
            g[pivot_col[i]] = f.neg(rows[i][free]);
        G.rows.push_back(std::move(g));
    }
    G.r = static_cast<uint32_t>(G.rows.size());
    return G;
}

CodeSummary min_distance(const CheckMatrix& H, uint64_t budget) {
    if (budget == 0) budget = enumeration_budget();
    const FieldSpec& f = H.f();
    const uint32_t k = H.n - matrix_rank(H);
    if (k == 0)
        raise(ErrorCode::TrivialCode, "null space is {0}; no codewords");

    CodeSummary s;
    s.n = H.n;
    s.k = k;
    s.rate = double(k) / H.n;

    uint64_t consumed = 0;

    if (f.q() == 2 && H.n <= 64) {
        std::vector<uint64_t> masks(H.r, 0);
        for (uint32_t i = 0; i < H.r; ++i)
            for (uint32_t j = 0; j < H.n; ++j)
                if (H.rows[i][j]) masks[i] |= uint64_t(1) << j;
        for (uint32_t w = 1; w <= H.n; ++w) {
            std::vector<uint32_t> comb(w);
            for (uint32_t i = 0; i < w; ++i) comb[i] = i;
            do {
                if (++consumed > budget)
                    raise(ErrorCode::SizeGuard, "min_distance enumeration budget exceeded");
                uint64_t sigma = 0;
                for (uint32_t i : comb) sigma |= uint64_t(1) << i;
                bool zero = true;
                for (uint64_t row : masks)
                    if (__builtin_popcountll(row & sigma) & 1) {
                        zero = false;
                        break;
                    }
                if (zero) {
                    s.d_min = w;
                    s.delta = double(w) / H.n;
                    return s;
                }
            } while (next_combination(comb, H.n));
        }
    } else {
        std::vector<FieldElement> sigma(H.n);
        for (uint32_t w = 1; w <= H.n; ++w) {
            LowWeightEnumerator en(H.n, w, w, H.field, /*budget=*/0, /*guard_total=*/false);
            while (en.next(sigma)) {
                if (++consumed > budget)
                    raise(ErrorCode::SizeGuard, "min_distance enumeration budget exceeded");
                if (in_null_space(H, sigma)) {
                    s.d_min = w;
                    s.delta = double(w) / H.n;
                    return s;
                }
            }
        }
    }
    raise(ErrorCode::Internal, "nonzero null space but no codeword found"); // unreachable
}

bool min_distance_at_least(const CheckMatrix& H, uint32_t d, uint64_t budget) {
    if (budget == 0) budget = enumeration_budget();
    if (d <= 1) return true;
    const FieldSpec& f = H.f();
    uint64_t consumed = 0;
    if (f.q() == 2 && H.n <= 64) {
        std::vector<uint64_t> masks(H.r, 0);
        for (uint32_t i = 0; i < H.r; ++i)
            for (uint32_t j = 0; j < H.n; ++j)
                if (H.rows[i][j]) masks[i] |= uint64_t(1) << j;
        const uint32_t wmax = std::min(d - 1, H.n);
        for (uint32_t w = 1; w <= wmax; ++w) {
            std::vector<uint32_t> comb(w);
            for (uint32_t i = 0; i < w; ++i) comb[i] = i;
            do {
                if (++consumed > budget)
                    raise(ErrorCode::SizeGuard, "distance check budget exceeded");
                uint64_t sigma = 0;
                for (uint32_t i : comb) sigma |= uint64_t(1) << i;
                bool zero = true;
                for (uint64_t row : masks)
                    if (__builtin_popcountll(row & sigma) & 1) {
                        zero = false;
                        break;
                    }
                if (zero) return false;
            } while (next_combination(comb, H.n));
        }
        return true;
    }
    std::vector<FieldElement> sigma(H.n);
    const uint32_t wmax = std::min(d - 1, H.n);
    for (uint32_t w = 1; w <= wmax; ++w) {
        LowWeightEnumerator en(H.n, w, w, H.field, 0, false);
        while (en.next(sigma)) {
            if (++consumed > budget)
                raise(ErrorCode::SizeGuard, "distance check budget exceeded");
            if (in_null_space(H, sigma)) return false;
        }
    }
    return true;
}

uint32_t min_distance_oracle(const CheckMatrix& G) {
    const FieldSpec& f = G.f();
    const uint32_t k = G.r;
    if (k == 0)
        raise(ErrorCode::TrivialCode, "generator has no rows");
    const uint64_t words = sat_pow(f.q(), k);
    if (words > (uint64_t(1) << 24))
        raise(ErrorCode::SizeGuard, "q^k exceeds 2^24 in generator enumeration");

    uint32_t best = G.n + 1;
    std::vector<FieldElement> word(G.n);
    std::vector<uint32_t> msg(k);
    for (uint64_t idx = 1; idx < words; ++idx) {
        uint64_t t = idx;
        for (uint32_t j = 0; j < k; ++j) {
            msg[j] = static_cast<uint32_t>(t % f.q());
            t /= f.q();
        }
        std::fill(word.begin(), word.end(), 0);
        for (uint32_t j = 0; j < k; ++j) {
            if (msg[j] == 0) continue;
            for (uint32_t i = 0; i < G.n; ++i)
                word[i] = f.add(word[i], f.mul(msg[j], G.rows[j][i]));
        }
        uint32_t w = 0;
        for (FieldElement e : word) w += (e != 0);
        if (w > 0 && w < best) best = w;
        if (best == 1) break;
    }
    if (best > G.n)
        raise(ErrorCode::Internal, "generator rows span only the zero word");
    return best;
}

uint64_t LowWeightEnumerator::count(uint32_t n, uint32_t wmin, uint32_t wmax, uint32_t q) {
    uint64_t total = 0;
    for (uint32_t w = wmin; w <= wmax; ++w)
        total = sat_add(total, sat_mul(binom_u64(n, w), sat_pow(q - 1, w)));
    return total;
}

LowWeightEnumerator::LowWeightEnumerator(uint32_t n, uint32_t wmin, uint32_t wmax,
                                         std::shared_ptr<const FieldSpec> field,
                                         uint64_t budget, bool guard_total)
    : n_(n), wmax_(wmax), field_(std::move(field)) {
    if (wmin < 1 || wmax < wmin || wmax > n)
        raise(ErrorCode::DomainError, "weight range must satisfy 1 <= wmin <= wmax <= n");
    total_ = count(n, wmin, wmax, field_->q());
    if (guard_total) {
        if (budget == 0) budget = enumeration_budget();
        if (total_ > budget)
            raise(ErrorCode::SizeGuard,
                  "low-weight enumeration of " + std::to_string(total_) +
                      " vectors exceeds budget " + std::to_string(budget));
    }
    cursor_.weight = wmin;
    cursor_.index = 0;
    load_state();
}

void LowWeightEnumerator::load_state() {
    if (cursor_.weight > wmax_) {
        done_ = true;
        return;
    }
    done_ = false;
    const uint32_t w = cursor_.weight;
    const uint64_t vals = sat_pow(field_->q() - 1, w);
    weight_count_ = sat_mul(binom_u64(n_, w), vals);
    if (cursor_.index >= weight_count_)
        raise(ErrorCode::DomainError, "enumeration cursor out of range");
    const uint64_t comb_rank = cursor_.index / vals;
    uint64_t val_rank = cursor_.index % vals;
    support_ = unrank_combination(n_, w, comb_rank);
    valdig_.assign(w, 0);
    for (uint32_t i = w; i-- > 0;) {
        valdig_[i] = static_cast<uint32_t>(val_rank % (field_->q() - 1));
        val_rank /= (field_->q() - 1);
    }
}

void LowWeightEnumerator::seek(const Cursor& c) {
    if (c.weight < 1 || c.weight > wmax_)
        raise(ErrorCode::DomainError, "enumeration cursor weight out of range");
    cursor_ = c;
    load_state();
}

bool LowWeightEnumerator::next(std::vector<FieldElement>& out) {
    if (done_) return false;
    out.assign(n_, 0);
    const uint32_t w = cursor_.weight;
    for (uint32_t i = 0; i < w; ++i)
        out[support_[i]] = static_cast<FieldElement>(valdig_[i] + 1);

    // Advance: value digits tick fastest, then the support combination,
    // then the weight class.
    ++cursor_.index;
    if (cursor_.index == weight_count_) {
        ++cursor_.weight;
        cursor_.index = 0;
        load_state();
        return true;
    }
    int i = static_cast<int>(w) - 1;
    while (i >= 0 && valdig_[i] == field_->q() - 2) {
        valdig_[i] = 0;
        --i;
    }
    if (i >= 0) {
        ++valdig_[i];
    } else {
        next_combination(support_, n_);
    }
    return true;
}

// -------------------------------------------------------------------------
// Greedy constructive bound.
//
// reach[v] = minimal number of chosen columns needed to express packed
// vector v, tracked up to d-2.  A candidate column is admissible iff it is
// not reachable; every accepted column extends the reachable set by one
// combination step.
// -------------------------------------------------------------------------

CheckMatrix gv_greedy_construct(uint32_t n, uint32_t d,
                                std::shared_ptr<const FieldSpec> field) {
    if (d < 2 || d > n)
        raise(ErrorCode::DomainError, "gv_greedy_construct requires 2 <= d <= n");
    if (d > 250)
        raise(ErrorCode::SizeGuard, "distance target too large for level tracking");
    const FieldSpec& f = *field;
    const uint32_t q = f.q();
    const bool char2 = f.is_char2();

    for (uint32_t r = 1;; ++r) {
        const uint64_t space = sat_pow(q, r);
        if (space > (uint64_t(1) << 24))
            raise(ErrorCode::SizeGuard, "column search space q^r exceeds 2^24");

        const uint8_t cap = static_cast<uint8_t>(d - 2); // track combos of <= d-2 columns
        std::vector<uint8_t> reach(space, 0xFF);
        std::vector<std::vector<uint32_t>> level(cap + 1);
        reach[0] = 0;
        level[0].push_back(0);

        // Per-digit packed add/scale; whole-word XOR when p = 2.
        auto vec_add = [&](uint64_t a, uint64_t b) -> uint64_t {
            if (char2) return a ^ b;
            uint64_t out = 0, mulp = 1;
            for (uint32_t j = 0; j < r; ++j) {
                out += uint64_t(f.add(static_cast<FieldElement>(a % q),
                                      static_cast<FieldElement>(b % q))) * mulp;
                a /= q;
                b /= q;
                mulp *= q;
            }
            return out;
        };
        auto vec_scale = [&](uint32_t lambda, uint64_t a) -> uint64_t {
            uint64_t out = 0, mulp = 1;
            for (uint32_t j = 0; j < r; ++j) {
                out += uint64_t(f.mul(lambda, static_cast<FieldElement>(a % q))) * mulp;
                a /= q;
                mulp *= q;
            }
            return out;
        };

        std::vector<uint64_t> cols;
        cols.reserve(n);
        uint64_t cursor = 0; // values below this are permanently rejected
        bool failed = false;
        while (cols.size() < n) {
            while (cursor < space && reach[cursor] != 0xFF) ++cursor;
            // d = 2 tracks nothing beyond zero, so the same column may be
            // reused; restart candidates only advance past reached ones.
            if (cursor == space) {
                failed = true;
                break;
            }
            const uint64_t c = cursor;
            cols.push_back(c);
            if (cap >= 1) {
                for (int t = std::min<int>(cap - 1, static_cast<int>(level.size()) - 1);
                     t >= 0; --t) {
                    for (size_t vi = 0; vi < level[t].size(); ++vi) {
                        const uint64_t v = level[t][vi];
                        if (reach[v] != t) continue; // stale entry
                        for (uint32_t lambda = 1; lambda < q; ++lambda) {
                            const uint64_t lc = lambda == 1 ? c : vec_scale(lambda, c);
                            const uint64_t u = vec_add(v, lc);
                            if (reach[u] > t + 1) {
                                // re-push on improvement too: u must serve as a
                                // source at its new, smaller level
                                reach[u] = static_cast<uint8_t>(t + 1);
                                level[t + 1].push_back(static_cast<uint32_t>(u));
                            }
                        }
                    }
                }
            }
        }
        if (failed) continue;

        CheckMatrix H;
        H.field = field;
        H.n = n;
        H.r = r;
        H.rows.assign(r, std::vector<FieldElement>(n, 0));
        for (uint32_t i = 0; i < n; ++i) {
            uint64_t c = cols[i];
            for (uint32_t j = 0; j < r; ++j) {
                // digit with place value q^j is row r-1-j, so ascending packed
                // order is lexicographic in (row 0, row 1, ...)
                H.rows[r - 1 - j][i] = static_cast<FieldElement>(c % q);
                c /= q;
            }
        }
        return H;
    }
}

CheckMatrix random_matrix(uint32_t n, uint32_t r,
                          std::shared_ptr<const FieldSpec> field, uint64_t seed) {
    CheckMatrix M;
    M.field = std::move(field);
    M.n = n;
    M.r = r;
    M.rows.assign(r, std::vector<FieldElement>(n, 0));
    SplitMix64 g(seed);
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < n; ++j)
            M.rows[i][j] = static_cast<FieldElement>(g.below(M.f().q()));
    return M;
}

FieldElement parse_element_token(const FieldSpec& f, const std::string& tok) {
    std::vector<uint32_t> coords;
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ':')) {
        try {
            size_t used = 0;
            coords.push_back(static_cast<uint32_t>(std::stoul(part, &used)));
            if (used != part.size())
                raise(ErrorCode::ParseError, "bad element '" + tok + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            raise(ErrorCode::ParseError, "bad element '" + tok + "'");
        }
    }
    if (coords.size() != f.m())
        raise(ErrorCode::ParseError, "element '" + tok + "' has wrong coordinate count");
    return f.from_coords(coords);
}

std::string element_token(const FieldSpec& f, FieldElement e) {
    const auto coords = f.coords(e);
    std::string out;
    for (uint32_t s = 0; s < f.m(); ++s) {
        if (s) out += ":";
        out += std::to_string(coords[s]);
    }
    return out;
}

CheckMatrix read_matrix_text(std::istream& in) {
    uint32_t p = 0, m = 0, n = 0, r = 0;
    if (!(in >> p >> m >> n >> r))
        raise(ErrorCode::ParseError, "matrix header must be \"p m n r\"");
    if (n < 1)
        raise(ErrorCode::ParseError, "matrix needs n >= 1");
    CheckMatrix M;
    M.field = FieldSpec::make_shared(p, m);
    M.n = n;
    M.r = r;
    M.rows.assign(r, std::vector<FieldElement>(n, 0));
    for (uint32_t i = 0; i < r; ++i) {
        for (uint32_t j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok))
                raise(ErrorCode::ParseError, "matrix body ended early");
            M.rows[i][j] = parse_element_token(M.f(), tok);
        }
    }
    return M;
}

void write_matrix_text(std::ostream& out, const CheckMatrix& M) {
    const FieldSpec& f = M.f();
    out << f.p() << " " << f.m() << " " << M.n << " " << M.r << "\n";
    for (uint32_t i = 0; i < M.r; ++i) {
        for (uint32_t j = 0; j < M.n; ++j) {
            if (j) out << " ";
            out << element_token(f, M.rows[i][j]);
        }
        out << "\n";
    }
}

} // namespace gvlab

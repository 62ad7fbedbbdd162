#ifndef GVLAB_CODES_HPP
#define GVLAB_CODES_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "gvlab/field.hpp"

namespace gvlab {

// r x n matrix over F_q whose null space is the code.  Rows need not be
// linearly independent; the redundancy budget r counts rows, not rank.
struct CheckMatrix {
    std::shared_ptr<const FieldSpec> field;
    uint32_t n = 0;
    uint32_t r = 0;
    std::vector<std::vector<FieldElement>> rows;

    const FieldSpec& f() const { return *field; }
};

struct CodeSummary {
    uint32_t n = 0;
    uint32_t k = 0;
    double rate = 0.0;
    uint32_t d_min = 0;
    double delta = 0.0;
};

uint32_t matrix_rank(const CheckMatrix& M);

// Basis of the null space of H, returned as a k x n generator matrix.
CheckMatrix null_space_basis(const CheckMatrix& H);

// Exact minimum distance by increasing-weight probing of the null space.
// TrivialCode when k = 0; SizeGuard when more than `budget` candidates
// would be checked (0 means the configured default).
CodeSummary min_distance(const CheckMatrix& H, uint64_t budget = 0);

// True iff no nonzero codeword of weight < d exists.  Same enumeration core
// as min_distance but stops at weight d-1.
bool min_distance_at_least(const CheckMatrix& H, uint32_t d, uint64_t budget = 0);

// Independent oracle: enumerate all q^k words spanned by the rows of G and
// return the minimum nonzero weight.  Requires q^k <= 2^24.
uint32_t min_distance_oracle(const CheckMatrix& G);

// Streams every vector of weight wmin..wmax over F_q^n exactly once in
// (weight, support, values) lexicographic order.  Restartable from a cursor
// so work can be partitioned.
class LowWeightEnumerator {
  public:
    struct Cursor {
        uint32_t weight = 0;
        uint64_t index = 0; // rank within this weight class
    };

    // Guards the total vector count against `budget` (0 = configured default)
    // unless guard_total is false (internal callers count consumption
    // themselves).
    LowWeightEnumerator(uint32_t n, uint32_t wmin, uint32_t wmax,
                        std::shared_ptr<const FieldSpec> field,
                        uint64_t budget = 0, bool guard_total = true);

    // Fills `out` (length n) with the next vector; false when exhausted.
    bool next(std::vector<FieldElement>& out);

    Cursor cursor() const { return cursor_; }
    void seek(const Cursor& c);

    uint64_t total_count() const { return total_; }
    static uint64_t count(uint32_t n, uint32_t wmin, uint32_t wmax, uint32_t q);

  private:
    void load_state();

    uint32_t n_;
    uint32_t wmax_;
    std::shared_ptr<const FieldSpec> field_;
    uint64_t total_ = 0;
    Cursor cursor_;
    bool done_ = false;
    std::vector<uint32_t> support_;
    std::vector<uint32_t> valdig_; // digits in [0, q-2]; element = digit + 1
    uint64_t weight_count_ = 0;    // vectors in the current weight class
};

// Varshamov-style greedy construction: grow columns in ascending packed
// order, rejecting any column expressible as a combination of at most d-2
// chosen columns, escalating r until n columns fit.  The result satisfies
// min_distance >= d and q^r <= q * Vol_q(n-1, d-2).
CheckMatrix gv_greedy_construct(uint32_t n, uint32_t d,
                                std::shared_ptr<const FieldSpec> field);

// Uniform i.i.d. entries from a SplitMix64 stream seeded with `seed`,
// filled row-major (row 0 first, column 0 first).  Identical inputs give
// identical matrices on every platform.
CheckMatrix random_matrix(uint32_t n, uint32_t r,
                          std::shared_ptr<const FieldSpec> field, uint64_t seed);

// Text format: header "p m n r", then r lines of n elements, each element
// m colon-joined residues (least significant coordinate first).
CheckMatrix read_matrix_text(std::istream& in);
void write_matrix_text(std::ostream& out, const CheckMatrix& M);

// One element in the text format above ("1", "0:1", ...).
FieldElement parse_element_token(const FieldSpec& f, const std::string& tok);
std::string element_token(const FieldSpec& f, FieldElement e);

// Saturating binomial coefficient (caps at 2^63).
uint64_t binom_u64(uint64_t n, uint64_t k);

} // namespace gvlab

#endif

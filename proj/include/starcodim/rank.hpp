#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "starcodim/rational.hpp"

namespace starcodim {

// Streaming exact column echelon over Q, keyed by smallest surviving row
// index. Pivot choice is the first nonzero entry in row order; arithmetic is
// exact so no numerical tie-breaking exists.
class RationalEchelon {
public:
    // Returns true when the column enlarged the span.
    bool insert(SparseVec col);
    // Reduces without inserting; true iff the vector lies in the span.
    bool in_span(SparseVec col) const;
    int rank() const { return static_cast<int>(pivots_.size()); }
    // Echelonized basis of the span, pivot coordinate ascending.
    std::vector<SparseVec> basis() const;

private:
    void reduce(SparseVec& col) const;
    std::map<int, SparseVec> pivots_;  // pivot row -> column with that pivot = 1
};

// Reduced row echelon form of sparse rows over coordinates 0..width-1.
struct SparseRref {
    std::vector<SparseVec> rows;  // sorted by pivot coordinate
    std::vector<int> pivot_cols;
};
SparseRref rref_sparse(std::vector<SparseVec> rows, int width);

// Kernel of the row space as RREF-convention basis vectors (one per free
// coordinate, ascending).
std::vector<std::vector<Rational>> nullspace_basis(const SparseRref& r, int width);

enum class RankMethod { Exact, ModularChecked };

struct RankReport {
    long rank = 0;
    RankMethod method = RankMethod::Exact;
    // Exact rank, or modular consensus certified against exact (small cases).
    bool certified = true;
    std::vector<uint64_t> primes_used;
};

long rank_exact(const std::vector<SparseVec>& columns);

// Rank modulo three fixed large primes (largest primes below 2^61, skipping
// any that divide a denominator). Disagreement falls back to rank_exact; a
// consensus is certified against rank_exact when the matrix holds at most
// certify_entry_limit stored entries, else reported probabilistic.
RankReport rank_modular_checked(const std::vector<SparseVec>& columns,
                                size_t certify_entry_limit = 200000);

// The primes used by rank_modular_checked, deterministic.
const std::vector<uint64_t>& modular_primes();

}  // namespace starcodim

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "starcodim/algebra.hpp"
#include "starcodim/codim.hpp"

namespace starcodim {

// Commutative metabelian chain algebra: basis a, b, z_1..z_{2T+1};
// z_i a = a z_i = z_{i+1} (i <= 2T), z_{2T+1} b = b z_{2T+1} = z_1;
// a* = -a, b* = b, z_i* = (-1)^{i+1} z_i. Dimension 2T+3.
AlgebraPtr make_A_T(int T);

// Multi-chain variant with M wrap generators: basis a, b_1..b_M, z^i_j for
// i <= M+1, j <= 2T+1; a z^i_j = z^i_{j+1} (j <= 2T), b_i z^i_{2T+1} = z^{i+1}_1,
// all commutative, out-of-range chain steps truncate to 0. Dimension
// 1 + M + (M+1)(2T+1).
AlgebraPtr make_tilde_slice(int T, int M);

// make_tilde_slice(T, M) tensored with nilpotent Z-powers of order N.
AlgebraPtr make_B_slice(int T, int N, int M);

// Strictly interleaved block parameters 0 < T_1 < N_1 < T_2 < N_2 < ...
struct BlockSchedule {
    std::vector<std::pair<Integer, Integer>> blocks;  // (T_k, N_k)
    std::optional<Rational> alpha;                    // target when produced by greedy_schedule
};

// Throws StructuralError when the interleaving or minimal parameter bounds fail.
void validate_schedule(const BlockSchedule& s);

// direct_sum of make_B_slice(T_k, N_k, slice_sizes[k]); every block parameter
// must fit in an int at this desk scale.
AlgebraPtr make_C_prefix(const BlockSchedule& s, const std::vector<int>& slice_sizes);

// Predicted nonzero-ness of the left-normed product of a basis-index word of
// make_A_T(T) (length >= 2): exactly one chain element z_s, placed first or
// second, and the walk it starts (a advances j -> j+1 while j <= 2T, b wraps
// exactly at 2T+1) never truncates.
bool chain_word_nonzero(int T, const std::vector<int>& word);

// Rank-1 certificate on make_A_T(T): the left-normed word
// z_1 (a^{2T} b)^chains a^tail evaluates to z_{tail+1} != 0.
// Cell (chains + 1, 2T*chains + tail); requires 0 <= tail <= 2T.
WitnessCertificate chain_witness(int T, int chains, int tail);

// Rank-m! certificate on make_tilde_slice(T, M), m <= M: rows are the words
// z (a^{2T} b_?)^m a^tail with the b-slots ordered by sigma, columns
// substitute b_1..b_m in the order tau; a row-column pair evaluates nonzero
// exactly when tau inverts sigma, giving a scaled permutation matrix.
WitnessCertificate factorial_witness(int T, int M, int m, int tail = 0);

enum class ScheduleMode { Computed, Bound };

struct ScheduleStep {
    int index = 0;  // 1-based block number
    Integer T, N;
    Integer chain_m;   // bound mode: the certified factorial argument m (else 0)
    Integer crossing;  // computed mode: c*_N of the probed slice (else 0)
    std::string rule;  // how this pair was derived, human-readable
};

struct GreedyResult {
    BlockSchedule schedule;
    std::vector<ScheduleStep> steps;
};

// A threshold could not be located inside the configured search space; the
// steps found so far are preserved so callers can report honest partial work.
struct IncompleteError : std::runtime_error {
    IncompleteError(const std::string& msg, std::vector<ScheduleStep> done)
        : std::runtime_error(msg), steps(std::move(done)) {}
    std::vector<ScheduleStep> steps;
};

struct GreedyOptions {
    ScheduleMode mode = ScheduleMode::Computed;
    int blocks = 2;
    int horizon = 6;  // computed mode: highest degree probed per block
    int first_T = 2;  // computed mode: T_1 (bound mode derives T_1 from alpha)
    // Probe options. Every computed-mode probe targets a slice algebra, which
    // is commutative metabelian, so the left-normed basis is exact there and
    // is the default; pass a full-basis ComputeOptions to override.
    ComputeOptions compute{.basis_mode = BasisMode::LeftNormed};
};

// Block interleaving procedure: pick T_1, then alternately find the degree
// N_k where the slice's codimension growth certifiably reaches alpha^n and
// restart with a larger T_{k+1}. Computed mode probes honest codimensions of
// make_tilde_slice(T_k, M = n) and sets T_{k+1} = N_k + 1; bound mode uses
// the proven envelopes (n^3 below, factorial growth above) and sets
// T_{k+1} = 2 N_k. Throws IncompleteError when a threshold cannot be found.
GreedyResult greedy_schedule(const Rational& alpha, const GreedyOptions& opts);

// Certified comparison m! >= alpha^n: +1 yes, -1 no, 0 undecided.
// Directed-rounded lnGamma at escalating precision, with an exact integer
// confirmation when the operands are small enough.
int certified_factorial_vs_power(const Integer& m, const Rational& alpha, const Integer& n);

// "12345" for small values, "~d.ddd...e+EXP (bits=B)" past 40 digits.
std::string integer_brief(const Integer& v);

}  // namespace starcodim

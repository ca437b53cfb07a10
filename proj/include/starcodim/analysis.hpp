#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starcodim/codim.hpp"

namespace starcodim {

// theta_T = 1/(2T+1) exactly; beta_T = 1/(theta^theta (1-theta)^(1-theta))
// as an outward-rounded enclosure (transcendental, so never a point value).
struct ExponentConstants {
    int T = 0;
    Rational theta;
    std::string beta_lo, beta_hi;  // directed decimal ends, 36 significant digits
};

ExponentConstants exponent_constants(int T);

// Exact rational endpoints of the certified beta_T enclosure (the binary
// interval the decimal strings above were printed from).
std::pair<Rational, Rational> beta_bounds(int T);

// One verified comparison. lhs <= rhs is the claim; pass is "pass", "fail",
// or "info" (raw data outside the claim's range, or a recorded skip).
// Out-of-range rows carry "NA" sides and margin.
struct BoundRow {
    std::string bound;
    int n = 0;
    std::string lhs, rhs;
    std::string pass;
    std::string margin;  // rhs - lhs at the worst interval end
};

struct BoundReport {
    std::string name;
    std::vector<BoundRow> rows;
    bool all_pass() const;  // no "fail" rows
};

std::string to_csv(const BoundReport& r);    // header bound,n,lhs,rhs,pass,margin
std::string to_table(const BoundReport& r);  // aligned human-readable text

// c*_n <= d^(n+1) for every computed degree; exact integers.
BoundReport check_dimension_envelope(int d, const CodimSequence& seq);

// c*_n <= n^3 on 3 <= n <= 2T; n = 1, 2 reported informationally with raw
// sides, n > 2T out of range.
BoundReport check_cubic_envelope(const CodimSequence& seq, int T);

// Two-sided exponential estimate against the beta_T enclosure:
//   lower (n >= 2T+2):  (1/n^2) beta^(n-2T-1) <= c*_n   at the upper beta end
//   upper (all n):      c*_n <= 3 (2T+1)^3 n^3 beta^n   at the lower beta end
// so a pass holds across the entire enclosure.
BoundReport check_sandwich(const CodimSequence& seq, int T);

// Per degree: at most three k with c*_{k,n-k} != 0, and every nonzero cell
// satisfies (k-2)/n <= 1/(2T+1); exact rationals.
BoundReport check_support(const CodimSequence& seq, int T);

// c*_{k,m} <= (2T+1)^3 for every cell with k+m <= 2T+2; larger degrees out
// of range.
BoundReport check_cell_cap(const CodimSequence& seq, int T);

// c*_n <= 3n c*_{n-1} for n >= 2; n = 1 recorded as a skip.
BoundReport check_stepwise_growth(const CodimSequence& seq);

// Exact check of binom((2T+1)k, k) > N^(N) / (k^k (2Tk)^(2Tk) N^2) with
// N = (2T+1)k, for k = 1..k_max.
BoundReport stirling_binomial_check(int T, int k_max);

// Finite-window surrogate for the n-th-root growth rate: roots c*_n^(1/n) at
// 20 significant digits, "NA" where c*_n = 0; never an asymptotic claim.
struct ExponentWindowEstimate {
    int lo = 0, hi = 0;
    std::vector<std::pair<int, std::string>> roots;  // (n, decimal root or "NA")
    std::string min_root = "NA", max_root = "NA";    // over the positive entries
};

ExponentWindowEstimate window_estimate(const CodimSequence& seq, int lo, int hi);

// Two-column CSV (n,root) of a window estimate.
std::string to_csv(const ExponentWindowEstimate& w);

}  // namespace starcodim

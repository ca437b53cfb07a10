#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace starcodim {

// Exact scalar field: rationals in canonical form (reduced, positive denominator).
// GMP keeps results of arithmetic canonical; parse_rational canonicalizes input.
using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Accepts "p", "-p", "p/q" with optional sign on either part; q != 0.
Rational parse_rational(const std::string& text);

// Canonical text form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& r);

Integer binomial(unsigned long n, unsigned long k);
Integer int_pow(const Integer& base, unsigned long exp);
Integer factorial(unsigned long n);

// Sparse vector over an ambient basis: sorted by index, no zero entries.
using SparseVec = std::vector<std::pair<int, Rational>>;

// Sorts, merges duplicate indices, drops zeros.
void normalize(SparseVec& v);

SparseVec to_sparse(const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseVec& v, int dim);

}  // namespace starcodim

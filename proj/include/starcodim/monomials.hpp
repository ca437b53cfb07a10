#pragma once

#include <array>
#include <string>
#include <vector>

#include "starcodim/rational.hpp"

namespace starcodim {

// Enumeration refused because it exceeds a configured limit.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kDefaultDegreeCap = 8;

// Reads STARCODIM_DEGREE_CAP if set, else kDefaultDegreeCap.
int degree_cap_from_env();

// Full binary tree over n ordered leaves. Child encoding: values < leaves are
// leaf positions (left to right), values >= leaves index nodes[child - leaves].
struct BracketingTree {
    int leaves = 1;
    int root = 0;
    std::vector<std::array<int, 2>> nodes;

    bool operator==(const BracketingTree&) const = default;
    bool is_left_comb() const;
};

// All shapes with n leaves in recursive split-point order (size catalan(n-1)).
std::vector<BracketingTree> enumerate_bracketings(int n, int degree_cap = kDefaultDegreeCap);

BracketingTree left_comb_tree(int n);
Integer catalan(int n);

// Position of a tree within enumerate_bracketings order, computed arithmetically.
Integer bracketing_rank(const BracketingTree& t);

// A variable occurrence: x_index (symmetric) or y_index (skew), 1-based.
struct VarRef {
    bool skew = false;
    int index = 1;
    bool operator==(const VarRef&) const = default;
    // Global variable order x1 < ... < xk < y1 < ... < ym.
    bool operator<(const VarRef& o) const {
        return skew != o.skew ? !skew : index < o.index;
    }
    std::string str() const { return (skew ? "y" : "x") + std::to_string(index); }
};

struct MultilinearMonomial {
    BracketingTree tree;
    std::vector<VarRef> leaves;  // leaf position -> variable
    int degree() const { return static_cast<int>(leaves.size()); }
    bool operator==(const MultilinearMonomial&) const = default;
};

std::string monomial_to_string(const MultilinearMonomial& w);

// Inverse of monomial_to_string for signature (k, m); every variable must
// occur exactly once and parentheses must pair one internal node each.
MultilinearMonomial parse_monomial(const std::string& text, int k, int m);

enum class BasisMode { Full, LeftNormed };

// Ordered basis of the multilinear (k, m) space. Full mode: all (tree, perm)
// pairs, tree rank first then lexicographic leaf labels; catalan(n-1) * n!
// elements. LeftNormed mode: left-comb trees with first two leaves in
// increasing variable order; n!/2 elements (1 for n = 1). The reduced basis
// spans the same evaluation row space for commutative metabelian algebras.
struct MonomialBasis {
    int k = 0, m = 0;
    BasisMode mode = BasisMode::Full;
    std::vector<MultilinearMonomial> items;

    int degree() const { return k + m; }
    // -1 when the monomial is not an element of this basis.
    int index_of(const MultilinearMonomial& w) const;
};

MonomialBasis enumerate_monomials(int k, int m, int degree_cap = kDefaultDegreeCap);
MonomialBasis left_normed_enumerate(int k, int m, int degree_cap = kDefaultDegreeCap);
MonomialBasis make_basis(int k, int m, BasisMode mode, int degree_cap = kDefaultDegreeCap);

}  // namespace starcodim

// Independent oracle: dense evaluation matrix + textbook Gaussian elimination.
// Shares nothing with the engine's enumeration, assembly, or echelon paths:
// trees come from a local recursion, leaf orders from std::next_permutation,
// products from direct dense expansion of the structure constants, and the
// eigenbasis is read straight off a diagonal involution.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starcodim/algebra.hpp"

namespace oracle {

using starcodim::AlgebraWithInvolution;
using starcodim::Rational;
using Dense = std::vector<Rational>;

struct Tree {
    int n;                                   // leaf count
    std::vector<std::pair<int, int>> nodes;  // child values < n are leaves
    int root;
};

inline std::vector<Tree> trees_of(int n) {
    std::vector<Tree> out;
    if (n == 1) {
        out.push_back(Tree{1, {}, 0});
        return out;
    }
    for (int i = 1; i < n; ++i) {
        for (const auto& lt : trees_of(i)) {
            for (const auto& rt : trees_of(n - i)) {
                Tree t{n, {}, 0};
                auto embed = [&](const Tree& src, int leaf_off, int node_off) {
                    for (auto [a, b] : src.nodes) {
                        auto shift = [&](int c) {
                            return c < src.n ? c + leaf_off : c - src.n + n + node_off;
                        };
                        t.nodes.emplace_back(shift(a), shift(b));
                    }
                };
                embed(lt, 0, 0);
                int lnodes = static_cast<int>(lt.nodes.size());
                embed(rt, i, lnodes);
                int lroot = lt.n == 1 ? 0 : n + lt.root - lt.n;
                int rroot = rt.n == 1 ? i : n + lnodes + rt.root - rt.n;
                t.nodes.emplace_back(lroot, rroot);
                t.root = n + static_cast<int>(t.nodes.size()) - 1;
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

inline Dense mul(const AlgebraWithInvolution& a, const Dense& u, const Dense& v) {
    int d = a.dim();
    Dense out(d, Rational(0));
    for (int i = 0; i < d; ++i) {
        if (u[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (v[j] == 0) continue;
            for (const auto& [t, c] : a.product(i, j)) out[t] += u[i] * v[j] * c;
        }
    }
    return out;
}

inline Dense eval_tree(const AlgebraWithInvolution& a, const Tree& t, int node,
                       const std::vector<Dense>& leaf_vals) {
    if (node < t.n) return leaf_vals[node];
    const auto& [l, r] = t.nodes[node - t.n];
    return mul(a, eval_tree(a, t, l, leaf_vals), eval_tree(a, t, r, leaf_vals));
}

inline long dense_rank(std::vector<Dense> rows) {
    long rank = 0;
    size_t width = rows.empty() ? 0 : rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < width && pivot_row < rows.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const Rational inv = 1 / rows[pivot_row][col];
        for (size_t c = col; c < width; ++c) rows[pivot_row][c] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const Rational f = rows[r][col];
            for (size_t c = col; c < width; ++c) rows[r][c] -= f * rows[pivot_row][c];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

// Rank of the (k, m) evaluation matrix, everything dense and explicit.
inline long partial_codim(const AlgebraWithInvolution& a, int k, int m) {
    const int d = a.dim();
    const int n = k + m;
    // Diagonal involution required; eigenvectors are the signed basis elements.
    std::vector<Dense> sym, skew;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j)
            if (i != j && a.involution()[i][j] != 0)
                throw std::invalid_argument("oracle needs a diagonal involution");
        Dense e(d, Rational(0));
        e[i] = 1;
        (a.involution()[i][i] == 1 ? sym : skew).push_back(e);
    }
    std::vector<std::vector<Dense>> substitutions;
    std::vector<int> idx(n, 0);
    auto limit = [&](int pos) {
        return pos < k ? static_cast<int>(sym.size()) : static_cast<int>(skew.size());
    };
    while (true) {
        std::vector<Dense> vals(n);
        for (int pos = 0; pos < n; ++pos)
            vals[pos] = pos < k ? sym[idx[pos]] : skew[idx[pos]];
        substitutions.push_back(std::move(vals));
        int pos = n - 1;
        while (pos >= 0 && idx[pos] + 1 == limit(pos)) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    // Rows: (tree, leaf order) pairs over all substitutions.
    std::vector<Dense> rows;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (const auto& t : trees_of(n)) {
        std::vector<int> p = perm;
        do {
            Dense row;
            row.reserve(substitutions.size() * static_cast<size_t>(d));
            for (const auto& subst : substitutions) {
                std::vector<Dense> leaf_vals(n);
                for (int pos = 0; pos < n; ++pos) leaf_vals[pos] = subst[p[pos]];
                Dense v = eval_tree(a, t, t.root, leaf_vals);
                row.insert(row.end(), v.begin(), v.end());
            }
            rows.push_back(std::move(row));
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return dense_rank(std::move(rows));
}

}  // namespace oracle

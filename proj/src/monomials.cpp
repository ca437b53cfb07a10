#include "starcodim/monomials.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace starcodim {

namespace {

void check_cap(int n, int cap, const char* what) {
    if (n > cap)
        throw ResourceError(std::string(what) + ": degree " + std::to_string(n) +
                            " exceeds the degree cap " + std::to_string(cap));
    if (n < 1) throw ResourceError(std::string(what) + ": degree must be >= 1");
}

// Appends `src` rooted at child encoding `c` into `dst` (leaf offset given),
// returning the re-encoded child value. dst_leaves is the combined leaf count.
int graft(const BracketingTree& src, int c, int leaf_offset, int dst_leaves,
          std::vector<std::array<int, 2>>& dst_nodes) {
    if (c < src.leaves) return c + leaf_offset;
    const auto& node = src.nodes[c - src.leaves];
    int l = graft(src, node[0], leaf_offset, dst_leaves, dst_nodes);
    int r = graft(src, node[1], leaf_offset, dst_leaves, dst_nodes);
    dst_nodes.push_back({l, r});
    return dst_leaves + static_cast<int>(dst_nodes.size()) - 1;
}

}  // namespace

int degree_cap_from_env() {
    if (const char* v = std::getenv("STARCODIM_DEGREE_CAP")) {
        char* end = nullptr;
        long cap = std::strtol(v, &end, 10);
        if (end && *end == '\0' && cap >= 1) return static_cast<int>(cap);
    }
    return kDefaultDegreeCap;
}

bool BracketingTree::is_left_comb() const {
    int c = root;
    while (c >= leaves) {
        const auto& node = nodes[c - leaves];
        if (node[1] >= leaves) return false;
        c = node[0];
    }
    return true;
}

Integer catalan(int n) {
    return binomial(2 * n, n) / (n + 1);
}

std::vector<BracketingTree> enumerate_bracketings(int n, int degree_cap) {
    check_cap(n, degree_cap, "enumerate_bracketings");
    if (n == 1) return {BracketingTree{}};
    std::vector<BracketingTree> out;
    for (int i = 1; i < n; ++i) {
        auto lefts = enumerate_bracketings(i, degree_cap);
        auto rights = enumerate_bracketings(n - i, degree_cap);
        for (const auto& L : lefts) {
            for (const auto& R : rights) {
                BracketingTree t;
                t.leaves = n;
                int l = graft(L, L.root, 0, n, t.nodes);
                int r = graft(R, R.root, i, n, t.nodes);
                t.nodes.push_back({l, r});
                t.root = n + static_cast<int>(t.nodes.size()) - 1;
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

BracketingTree left_comb_tree(int n) {
    BracketingTree t;
    t.leaves = n;
    if (n == 1) return t;
    int acc = 0;
    for (int i = 1; i < n; ++i) {
        t.nodes.push_back({acc, i});
        acc = n + i - 1;
    }
    t.root = acc;
    return t;
}

namespace {

// Leaf count under child encoding c.
int subtree_leaves(const BracketingTree& t, int c) {
    if (c < t.leaves) return 1;
    const auto& node = t.nodes[c - t.leaves];
    return subtree_leaves(t, node[0]) + subtree_leaves(t, node[1]);
}

Integer rank_rec(const BracketingTree& t, int c, int size) {
    if (size == 1) return 0;
    const auto& node = t.nodes[c - t.leaves];
    int i = subtree_leaves(t, node[0]);
    Integer r = 0;
    for (int j = 1; j < i; ++j) r += catalan(j - 1) * catalan(size - j - 1);
    r += rank_rec(t, node[0], i) * catalan(size - i - 1);
    r += rank_rec(t, node[1], size - i);
    return r;
}

}  // namespace

Integer bracketing_rank(const BracketingTree& t) {
    return rank_rec(t, t.root, t.leaves);
}

std::string monomial_to_string(const MultilinearMonomial& w) {
    auto rec = [&](auto&& self, int c) -> std::string {
        if (c < w.tree.leaves) return w.leaves[c].str();
        const auto& node = w.tree.nodes[c - w.tree.leaves];
        return "(" + self(self, node[0]) + " " + self(self, node[1]) + ")";
    };
    return rec(rec, w.tree.root);
}

namespace {

struct MonomialParser {
    const std::string& s;
    size_t pos = 0;
    std::vector<VarRef> leaves;
    std::vector<std::array<int, 2>> nodes;

    explicit MonomialParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("monomial '" + s + "' at position " + std::to_string(pos) + ": " + msg);
    }

    char peek() {
        if (pos >= s.size()) fail("unexpected end of input");
        return s[pos];
    }

    // Returns a provisional child encoding: leaves as ~leaf_id (negative),
    // internal nodes as node index; resolved once the leaf count is known.
    int parse_node() {
        if (peek() == '(') {
            ++pos;
            int l = parse_node();
            if (pos >= s.size() || s[pos] != ' ') fail("expected single space between factors");
            ++pos;
            int r = parse_node();
            if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
            ++pos;
            nodes.push_back({l, r});
            return static_cast<int>(nodes.size()) - 1;
        }
        char c = peek();
        if (c != 'x' && c != 'y') fail("expected variable or '('");
        ++pos;
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) fail("variable needs an index");
        int idx = std::atoi(s.substr(start, pos - start).c_str());
        if (idx < 1) fail("variable index must be >= 1");
        leaves.push_back({c == 'y', idx});
        return ~(static_cast<int>(leaves.size()) - 1);
    }
};

}  // namespace

MultilinearMonomial parse_monomial(const std::string& text, int k, int m) {
    MonomialParser p(text);
    int root = p.parse_node();
    if (p.pos != text.size()) p.fail("trailing characters");

    const int n = static_cast<int>(p.leaves.size());
    if (n != k + m)
        throw ParseError("monomial '" + text + "' has " + std::to_string(n) +
                         " variables, expected " + std::to_string(k + m));
    std::vector<bool> seen_x(k, false), seen_y(m, false);
    for (const auto& v : p.leaves) {
        auto& seen = v.skew ? seen_y : seen_x;
        int limit = v.skew ? m : k;
        if (v.index > limit)
            throw ParseError("monomial '" + text + "': variable " + v.str() + " out of range");
        if (seen[v.index - 1])
            throw ParseError("monomial '" + text + "': variable " + v.str() + " repeated");
        seen[v.index - 1] = true;
    }

    MultilinearMonomial w;
    w.leaves = p.leaves;
    w.tree.leaves = n;
    w.tree.nodes.reserve(p.nodes.size());
    for (const auto& node : p.nodes) {
        std::array<int, 2> enc;
        for (int s = 0; s < 2; ++s)
            enc[s] = node[s] < 0 ? ~node[s] : n + node[s];
        w.tree.nodes.push_back(enc);
    }
    w.tree.root = root < 0 ? ~root : n + root;
    return w;
}

MonomialBasis enumerate_monomials(int k, int m, int degree_cap) {
    if (k < 0 || m < 0) throw ResourceError("enumerate_monomials: negative signature");
    const int n = k + m;
    check_cap(n, degree_cap, "enumerate_monomials");
    std::vector<VarRef> vars;
    for (int i = 1; i <= k; ++i) vars.push_back({false, i});
    for (int j = 1; j <= m; ++j) vars.push_back({true, j});

    MonomialBasis basis{k, m, BasisMode::Full, {}};
    for (const auto& tree : enumerate_bracketings(n, degree_cap)) {
        std::vector<VarRef> perm = vars;
        do {
            basis.items.push_back({tree, perm});
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return basis;
}

MonomialBasis left_normed_enumerate(int k, int m, int degree_cap) {
    if (k < 0 || m < 0) throw ResourceError("left_normed_enumerate: negative signature");
    const int n = k + m;
    check_cap(n, degree_cap, "left_normed_enumerate");
    std::vector<VarRef> vars;
    for (int i = 1; i <= k; ++i) vars.push_back({false, i});
    for (int j = 1; j <= m; ++j) vars.push_back({true, j});

    MonomialBasis basis{k, m, BasisMode::LeftNormed, {}};
    BracketingTree comb = left_comb_tree(n);
    std::vector<VarRef> perm = vars;
    do {
        if (n >= 2 && !(perm[0] < perm[1])) continue;
        basis.items.push_back({comb, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return basis;
}

MonomialBasis make_basis(int k, int m, BasisMode mode, int degree_cap) {
    return mode == BasisMode::Full ? enumerate_monomials(k, m, degree_cap)
                                   : left_normed_enumerate(k, m, degree_cap);
}

int MonomialBasis::index_of(const MultilinearMonomial& w) const {
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i] == w) return static_cast<int>(i);
    return -1;
}

}  // namespace starcodim

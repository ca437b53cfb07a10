#include "starcodim/rank.hpp"

#include <algorithm>

namespace starcodim {

namespace {

// w += f * v (sparse merge).
void axpy(SparseVec& w, const Rational& f, const SparseVec& v) {
    SparseVec out;
    out.reserve(w.size() + v.size());
    size_t a = 0, b = 0;
    while (a < w.size() || b < v.size()) {
        if (b == v.size() || (a < w.size() && w[a].first < v[b].first)) {
            out.push_back(std::move(w[a++]));
        } else if (a == w.size() || v[b].first < w[a].first) {
            out.emplace_back(v[b].first, f * v[b].second);
            ++b;
        } else {
            Rational c = w[a].second + f * v[b].second;
            if (c != 0) out.emplace_back(w[a].first, std::move(c));
            ++a;
            ++b;
        }
    }
    w = std::move(out);
}

}  // namespace

void RationalEchelon::reduce(SparseVec& col) const {
    while (!col.empty()) {
        auto it = pivots_.find(col.front().first);
        if (it == pivots_.end()) return;
        Rational f = -col.front().second;
        axpy(col, f, it->second);
    }
}

bool RationalEchelon::insert(SparseVec col) {
    reduce(col);
    if (col.empty()) return false;
    Rational inv = 1 / col.front().second;
    for (auto& [r, c] : col) c *= inv;
    int pivot = col.front().first;
    pivots_.emplace(pivot, std::move(col));
    return true;
}

bool RationalEchelon::in_span(SparseVec col) const {
    reduce(col);
    return col.empty();
}

std::vector<SparseVec> RationalEchelon::basis() const {
    std::vector<SparseVec> rows;
    rows.reserve(pivots_.size());
    for (const auto& [piv, row] : pivots_) rows.push_back(row);
    return rows;
}

SparseRref rref_sparse(std::vector<SparseVec> in_rows, int width) {
    std::map<int, SparseVec> pivots;
    for (auto& row : in_rows) {
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) break;
            axpy(row, -row.front().second, it->second);
        }
        if (row.empty()) continue;
        Rational inv = 1 / row.front().second;
        for (auto& [c, v] : row) v *= inv;
        pivots.emplace(row.front().first, std::move(row));
    }
    // Back-substitute to clear pivot columns above.
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        for (auto jt = pivots.begin(); jt->first != it->first; ++jt) {
            auto& row = jt->second;
            auto pos = std::lower_bound(row.begin(), row.end(), it->first,
                                        [](const auto& e, int c) { return e.first < c; });
            if (pos != row.end() && pos->first == it->first)
                axpy(row, -pos->second, it->second);
        }
    }
    SparseRref out;
    for (auto& [c, row] : pivots) {
        out.pivot_cols.push_back(c);
        out.rows.push_back(std::move(row));
    }
    (void)width;
    return out;
}

std::vector<std::vector<Rational>> nullspace_basis(const SparseRref& r, int width) {
    std::vector<bool> is_pivot(width, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (int f = 0; f < width; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> u(width, Rational(0));
        u[f] = 1;
        for (size_t i = 0; i < r.rows.size(); ++i) {
            const auto& row = r.rows[i];
            auto pos = std::lower_bound(row.begin(), row.end(), f,
                                        [](const auto& e, int c) { return e.first < c; });
            if (pos != row.end() && pos->first == f) u[r.pivot_cols[i]] = -pos->second;
        }
        out.push_back(std::move(u));
    }
    return out;
}

long rank_exact(const std::vector<SparseVec>& columns) {
    RationalEchelon ech;
    for (const auto& col : columns) ech.insert(col);
    return ech.rank();
}

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((u128)a * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // Deterministic witness set for all 64-bit integers.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t mod_of_integer(const Integer& z, uint64_t p) {
    Integer r = z % static_cast<unsigned long>(p);  // p < 2^61 fits unsigned long on LP64
    long v = r.get_si();
    if (v < 0) v += static_cast<long>(p);
    return static_cast<uint64_t>(v);
}

// Columns reduced mod p; false when a denominator vanishes mod p.
bool reduce_columns(const std::vector<SparseVec>& columns, uint64_t p,
                    std::vector<std::vector<std::pair<int, uint64_t>>>& out) {
    out.clear();
    out.reserve(columns.size());
    for (const auto& col : columns) {
        std::vector<std::pair<int, uint64_t>> c;
        c.reserve(col.size());
        for (const auto& [row, val] : col) {
            uint64_t den = mod_of_integer(val.get_den(), p);
            if (den == 0) return false;
            uint64_t num = mod_of_integer(val.get_num(), p);
            uint64_t v = mulmod(num, powmod(den, p - 2, p), p);
            if (v) c.emplace_back(row, v);
        }
        out.push_back(std::move(c));
    }
    return true;
}

long rank_mod_p(std::vector<std::vector<std::pair<int, uint64_t>>>& cols, uint64_t p) {
    std::map<int, std::vector<std::pair<int, uint64_t>>> pivots;
    long rank = 0;
    for (auto& col : cols) {
        while (!col.empty()) {
            auto it = pivots.find(col.front().first);
            if (it == pivots.end()) break;
            uint64_t f = p - col.front().second;  // col += f * pivot removes the head
            const auto& piv = it->second;
            std::vector<std::pair<int, uint64_t>> merged;
            merged.reserve(col.size() + piv.size());
            size_t a = 0, b = 0;
            while (a < col.size() || b < piv.size()) {
                if (b == piv.size() || (a < col.size() && col[a].first < piv[b].first)) {
                    merged.push_back(col[a++]);
                } else if (a == col.size() || piv[b].first < col[a].first) {
                    merged.emplace_back(piv[b].first, mulmod(f, piv[b].second, p));
                    ++b;
                } else {
                    uint64_t v = (col[a].second + mulmod(f, piv[b].second, p)) % p;
                    if (v) merged.emplace_back(col[a].first, v);
                    ++a, ++b;
                }
            }
            col = std::move(merged);
        }
        if (col.empty()) continue;
        uint64_t inv = powmod(col.front().second, p - 2, p);
        for (auto& [r, v] : col) v = mulmod(v, inv, p);
        pivots.emplace(col.front().first, std::move(col));
        col.clear();
        ++rank;
    }
    return rank;
}

}  // namespace

const std::vector<uint64_t>& modular_primes() {
    static const std::vector<uint64_t> primes = [] {
        std::vector<uint64_t> out;
        uint64_t candidate = (1ull << 61) - 1;
        while (out.size() < 3) {
            if (is_prime_u64(candidate)) out.push_back(candidate);
            --candidate;
        }
        return out;
    }();
    return primes;
}

RankReport rank_modular_checked(const std::vector<SparseVec>& columns,
                                size_t certify_entry_limit) {
    RankReport report;
    report.method = RankMethod::ModularChecked;

    size_t entries = 0;
    for (const auto& c : columns) entries += c.size();

    std::vector<long> ranks;
    for (uint64_t p : modular_primes()) {
        std::vector<std::vector<std::pair<int, uint64_t>>> cols;
        if (!reduce_columns(columns, p, cols)) continue;  // prime divides a denominator
        ranks.push_back(rank_mod_p(cols, p));
        report.primes_used.push_back(p);
    }

    bool agree = !ranks.empty() &&
                 std::all_of(ranks.begin(), ranks.end(), [&](long r) { return r == ranks[0]; });
    if (!agree) {
        report.rank = rank_exact(columns);
        report.method = RankMethod::Exact;
        report.certified = true;
        return report;
    }
    report.rank = ranks[0];
    if (entries <= certify_entry_limit) {
        long exact = rank_exact(columns);
        if (exact != report.rank) {
            // Consensus was wrong (possible in principle); exact wins.
            report.rank = exact;
            report.method = RankMethod::Exact;
        }
        report.certified = true;
    } else {
        report.certified = false;
    }
    return report;
}

}  // namespace starcodim

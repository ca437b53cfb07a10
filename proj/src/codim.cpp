#include "starcodim/codim.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace starcodim {

namespace {

int slot_of(const VarRef& v, int k) { return v.skew ? k + v.index - 1 : v.index - 1; }

// (k, m) of a monomial, rejecting anything that is not exactly the multiset
// {x1..xk, y1..ym}.
std::pair<int, int> multidegree_checked(const MultilinearMonomial& w) {
    int k = 0, m = 0;
    for (const auto& v : w.leaves) (v.skew ? m : k)++;
    std::vector<char> seen(w.leaves.size(), 0);
    for (const auto& v : w.leaves) {
        const int limit = v.skew ? m : k;
        if (v.index < 1 || v.index > limit)
            throw StructuralError("monomial variable " + v.str() + " out of range for its multidegree");
        const int s = slot_of(v, k);
        if (seen[s]) throw StructuralError("monomial repeats variable " + v.str());
        seen[s] = 1;
    }
    return {k, m};
}

// Number of substitutions p^k q^m, or 0 when a needed side has no elements.
long long checked_assignment_count(int k, int m, int p, int q, long long limit,
                                   const std::string& what) {
    if ((k > 0 && p == 0) || (m > 0 && q == 0)) return 0;
    Integer t = int_pow(Integer(p), static_cast<unsigned long>(k)) *
                int_pow(Integer(q), static_cast<unsigned long>(m));
    if (t > static_cast<long>(limit))
        throw ResourceError(what + " needs " + t.get_str() +
                            " substitutions; the configured limit is " + std::to_string(limit));
    return static_cast<long long>(t.get_si());
}

Assignment assignment_from_index(long long idx, int k, int m, int p, int q) {
    Assignment a;
    a.sym.resize(k);
    a.skew.resize(m);
    for (int j = m - 1; j >= 0; --j) {
        a.skew[j] = static_cast<int>(idx % q);
        idx /= q;
    }
    for (int i = k - 1; i >= 0; --i) {
        a.sym[i] = static_cast<int>(idx % p);
        idx /= p;
    }
    return a;
}

// Odometer over (x1..xk, y1..ym) digits, y_m spinning fastest.
struct Odometer {
    int k, p, q;
    std::vector<int> digits;
    Odometer(int k_, int m_, int p_, int q_) : k(k_), p(p_), q(q_), digits(k_ + m_, 0) {}
    bool advance() {
        for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
            const int radix = i < k ? p : q;
            if (++digits[i] < radix) return true;
            digits[i] = 0;
        }
        return false;
    }
};

SparseVec eval_tree_generic(const AlgebraWithInvolution& a, const MultilinearMonomial& w,
                            const std::vector<const SparseVec*>& slot_vec, int k) {
    auto go = [&](auto&& self, int child) -> SparseVec {
        if (child < w.tree.leaves) return *slot_vec[slot_of(w.leaves[child], k)];
        const auto& nd = w.tree.nodes[child - w.tree.leaves];
        return a.multiply(self(self, nd[0]), self(self, nd[1]));
    };
    return go(go, w.tree.root);
}

// Fast path: every product and decomposed vector is +-(basis element).
std::pair<int, int> eval_tree_fast(const EvalContext::Fast& ft, int d,
                                   const MultilinearMonomial& w,
                                   const std::vector<int32_t>& leaf_idx,
                                   const std::vector<int8_t>& leaf_sgn, int k) {
    auto go = [&](auto&& self, int child) -> std::pair<int, int> {
        if (child < w.tree.leaves) {
            const int s = slot_of(w.leaves[child], k);
            return {leaf_idx[s], leaf_sgn[s]};
        }
        const auto& nd = w.tree.nodes[child - w.tree.leaves];
        auto l = self(self, nd[0]);
        if (l.first < 0) return {-1, 0};
        auto r = self(self, nd[1]);
        if (r.first < 0) return {-1, 0};
        const size_t cell = static_cast<size_t>(l.first) * d + r.first;
        const int pi = ft.idx[cell];
        if (pi < 0) return {-1, 0};
        return {pi, l.second * r.second * ft.sgn[cell]};
    };
    return go(go, w.tree.root);
}

using ColumnSink = std::function<void(long long, int, SparseVec&&)>;

// Honest assembly: enumerate every substitution, evaluate every basis
// monomial, emit the nonzero columns (assignment ascending, coordinate
// ascending within an assignment, rows ascending within a column).
void stream_honest(const EvalContext& ctx, const MonomialBasis& basis,
                   const ComputeOptions& opts, const ColumnSink& sink) {
    const int k = basis.k, m = basis.m, n = k + m;
    const int p = ctx.p(), q = ctx.q();
    const auto& a = ctx.algebra();
    const int d = a.dim();
    const long long total = checked_assignment_count(
        k, m, p, q, opts.assignment_limit,
        "cell (" + std::to_string(k) + "," + std::to_string(m) + ") of " + a.name());
    if (total == 0) return;
    if (basis.mode == BasisMode::LeftNormed && n >= 2 &&
        !(a.is_commutative() && a.is_metabelian()))
        throw StructuralError("left-normed basis is only valid for commutative metabelian algebras; " +
                              a.name() + " is not");

    std::vector<SparseVec> acc(d);
    std::vector<int> dirty;
    auto touch = [&](int coord, long row, const Rational& val) {
        if (acc[coord].empty()) dirty.push_back(coord);
        acc[coord].emplace_back(static_cast<int>(row), val);
    };
    auto flush = [&](long long ai) {
        std::sort(dirty.begin(), dirty.end());
        for (int c : dirty) sink(ai, c, std::move(acc[c])), acc[c].clear();
        dirty.clear();
    };

    Odometer od(k, m, p, q);
    if (ctx.has_fast_tables() && basis.mode == BasisMode::LeftNormed) {
        // All rows are chains (..(v1 v2)v3)..; grow the chain across the
        // canonical leaf orders depth-first, skipping whole subtrees (and
        // counting the rows they cover) as soon as the chain value dies.
        const auto& ft = ctx.fast_tables();
        std::vector<long> fact(n + 1, 1);
        for (int i = 2; i <= n; ++i) fact[i] = fact[i - 1] * i;
        std::vector<int32_t> leaf_idx(n);
        std::vector<int8_t> leaf_sgn(n);
        const Rational plus(1), minus(-1);
        for (long long ai = 0; ai < total; ++ai, od.advance()) {
            for (int s = 0; s < k; ++s) {
                leaf_idx[s] = ft.sym_idx[od.digits[s]];
                leaf_sgn[s] = ft.sym_sgn[od.digits[s]];
            }
            for (int s = 0; s < m; ++s) {
                leaf_idx[k + s] = ft.skew_idx[od.digits[k + s]];
                leaf_sgn[k + s] = ft.skew_sgn[od.digits[k + s]];
            }
            long row = 0;
            uint32_t used = 0;
            auto dfs = [&](auto&& self, int depth, int cur, int sgn, int first) -> void {
                for (int v = depth == 1 ? first + 1 : 0; v < n; ++v) {
                    if (used & (1u << v)) continue;
                    int ni, ns;
                    if (depth == 0) {
                        ni = leaf_idx[v];
                        ns = leaf_sgn[v];
                    } else {
                        const size_t cell = static_cast<size_t>(cur) * d + leaf_idx[v];
                        ni = ft.idx[cell];
                        if (ni < 0) {
                            row += fact[n - depth - 1];
                            continue;
                        }
                        ns = sgn * leaf_sgn[v] * ft.sgn[cell];
                    }
                    if (depth == n - 1) {
                        touch(ni, row, ns > 0 ? plus : minus);
                        ++row;
                    } else {
                        used |= 1u << v;
                        self(self, depth + 1, ni, ns, depth == 0 ? v : first);
                        used &= ~(1u << v);
                    }
                }
            };
            dfs(dfs, 0, -1, 1, -1);
            if (row != static_cast<long>(basis.items.size()))
                throw std::logic_error("left-normed row accounting mismatch");
            flush(ai);
        }
        return;
    }

    const bool fast = ctx.has_fast_tables();
    const auto& ft = ctx.fast_tables();
    std::vector<int32_t> leaf_idx(n);
    std::vector<int8_t> leaf_sgn(n);
    std::vector<const SparseVec*> slot_vec(n);
    const Rational plus(1), minus(-1);
    for (long long ai = 0; ai < total; ++ai, od.advance()) {
        if (fast) {
            for (int s = 0; s < k; ++s) {
                leaf_idx[s] = ft.sym_idx[od.digits[s]];
                leaf_sgn[s] = ft.sym_sgn[od.digits[s]];
            }
            for (int s = 0; s < m; ++s) {
                leaf_idx[k + s] = ft.skew_idx[od.digits[k + s]];
                leaf_sgn[k + s] = ft.skew_sgn[od.digits[k + s]];
            }
            for (size_t r = 0; r < basis.items.size(); ++r) {
                auto [c, s] = eval_tree_fast(ft, d, basis.items[r], leaf_idx, leaf_sgn, k);
                if (c >= 0) touch(c, static_cast<long>(r), s > 0 ? plus : minus);
            }
        } else {
            for (int s = 0; s < k; ++s) slot_vec[s] = &ctx.symmetric_sparse()[od.digits[s]];
            for (int s = 0; s < m; ++s) slot_vec[k + s] = &ctx.skew_sparse()[od.digits[k + s]];
            for (size_t r = 0; r < basis.items.size(); ++r) {
                SparseVec val = eval_tree_generic(a, basis.items[r], slot_vec, k);
                for (const auto& [c, x] : val) touch(c, static_cast<long>(r), x);
            }
        }
        flush(ai);
    }
}

// Column-space generators of a cell, after the soundness-preserving
// shortcuts. Rows always index the given basis, so generators coming from
// different blocks or from a tensor base concatenate directly.
void stream_cell(const EvalContext& ctx, const MonomialBasis& basis,
                 const ComputeOptions& opts, const ColumnSink& sink) {
    const int k = basis.k, m = basis.m;
    if ((k > 0 && ctx.p() == 0) || (m > 0 && ctx.q() == 0)) return;
    if (opts.use_tensor_reduction && ctx.tensor_base()) {
        if (k + m > ctx.algebra().tensor_tag()->order) return;
        stream_cell(*ctx.tensor_base(), basis, opts, sink);
        return;
    }
    if (opts.use_component_split && !ctx.sum_parts().empty()) {
        for (const auto& part : ctx.sum_parts()) stream_cell(*part, basis, opts, sink);
        return;
    }
    if (opts.use_vanishing_shortcut && ctx.cell_vanishes(k, m)) return;
    stream_honest(ctx, basis, opts, sink);
}

AlgebraPtr extract_component(const AlgebraWithInvolution& a, const std::vector<int>& comp,
                             int which) {
    const int d = static_cast<int>(comp.size());
    std::vector<int> pos(a.dim(), -1);
    for (int i = 0; i < d; ++i) pos[comp[i]] = i;
    std::vector<std::string> labels;
    for (int i : comp) labels.push_back(a.labels()[i]);
    std::vector<SparseVec> products(static_cast<size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            SparseVec v = a.product(comp[i], comp[j]);
            for (auto& [t, c] : v) t = pos[t];
            products[static_cast<size_t>(i) * d + j] = std::move(v);
        }
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, Rational(0)));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) inv[r][c] = a.involution()[comp[r]][comp[c]];
    return std::make_shared<AlgebraWithInvolution>(a.name() + "#" + std::to_string(which),
                                                   std::move(labels), std::move(products),
                                                   std::move(inv));
}

}  // namespace

EvalContext::EvalContext(AlgebraPtr algebra)
    : algebra_(std::move(algebra)), decomp_(decompose(*algebra_)) {
    // Settle the lazy algebra caches so concurrent const reads are safe.
    algebra_->is_commutative();
    algebra_->is_metabelian();
    const auto& comps = algebra_->components();

    for (const auto& v : decomp_.symmetric) sym_sparse_.push_back(to_sparse(v));
    for (const auto& v : decomp_.skew) skew_sparse_.push_back(to_sparse(v));

    const int d = algebra_->dim();
    fast_ = true;
    fast_tables_.idx.assign(static_cast<size_t>(d) * d, -1);
    fast_tables_.sgn.assign(static_cast<size_t>(d) * d, 0);
    for (int i = 0; fast_ && i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const SparseVec& pv = algebra_->product(i, j);
            if (pv.empty()) continue;
            if (pv.size() > 1 || (pv[0].second != 1 && pv[0].second != -1)) {
                fast_ = false;
                break;
            }
            fast_tables_.idx[static_cast<size_t>(i) * d + j] = pv[0].first;
            fast_tables_.sgn[static_cast<size_t>(i) * d + j] = pv[0].second == 1 ? 1 : -1;
        }
    auto unit_decompose = [&](const std::vector<SparseVec>& vecs, std::vector<int32_t>& idx,
                              std::vector<int8_t>& sgn) {
        for (const auto& v : vecs) {
            if (v.size() != 1 || (v[0].second != 1 && v[0].second != -1)) {
                fast_ = false;
                return;
            }
            idx.push_back(v[0].first);
            sgn.push_back(v[0].second == 1 ? 1 : -1);
        }
    };
    if (fast_) unit_decompose(sym_sparse_, fast_tables_.sym_idx, fast_tables_.sym_sgn);
    if (fast_) unit_decompose(skew_sparse_, fast_tables_.skew_idx, fast_tables_.skew_sgn);
    if (!fast_) fast_tables_ = Fast{};

    if (algebra_->tensor_tag()) {
        tensor_base_ = std::make_shared<EvalContext>(algebra_->tensor_tag()->base);
    } else if (!algebra_->sum_parts().empty()) {
        for (const auto& sp : algebra_->sum_parts())
            sum_parts_.push_back(std::make_shared<EvalContext>(sp.part));
    } else if (comps.size() > 1) {
        int which = 0;
        for (const auto& comp : comps)
            sum_parts_.push_back(
                std::make_shared<EvalContext>(extract_component(*algebra_, comp, ++which)));
    }
}

const std::vector<SparseVec>& EvalContext::product_span(int k, int m) const {
    if (k < 0 || m < 0 || k + m < 1)
        throw std::invalid_argument("product_span needs k, m >= 0 with k + m >= 1");
    const auto key = std::make_pair(k, m);
    if (auto it = span_cache_.find(key); it != span_cache_.end()) return it->second;
    RationalEchelon ech;
    if (k + m == 1) {
        for (const auto& v : (k == 1 ? sym_sparse_ : skew_sparse_)) ech.insert(v);
    } else {
        for (int k1 = 0; k1 <= k; ++k1)
            for (int m1 = 0; m1 <= m; ++m1) {
                const int k2 = k - k1, m2 = m - m1;
                if (k1 + m1 < 1 || k2 + m2 < 1) continue;
                const auto& A = product_span(k1, m1);
                const auto& B = product_span(k2, m2);
                for (const auto& u : A)
                    for (const auto& v : B) ech.insert(algebra_->multiply(u, v));
            }
    }
    return span_cache_.emplace(key, ech.basis()).first->second;
}

SparseVec evaluate_monomial(const EvalContext& ctx, const MultilinearMonomial& w,
                            const Assignment& a) {
    const auto [k, m] = multidegree_checked(w);
    if (static_cast<int>(a.sym.size()) != k || static_cast<int>(a.skew.size()) != m)
        throw StructuralError("assignment shape does not match the monomial multidegree");
    for (int i : a.sym)
        if (i < 0 || i >= ctx.p()) throw StructuralError("symmetric choice out of range");
    for (int j : a.skew)
        if (j < 0 || j >= ctx.q()) throw StructuralError("skew choice out of range");
    std::vector<const SparseVec*> slot_vec(k + m);
    for (int i = 0; i < k; ++i) slot_vec[i] = &ctx.symmetric_sparse()[a.sym[i]];
    for (int j = 0; j < m; ++j) slot_vec[k + j] = &ctx.skew_sparse()[a.skew[j]];
    return eval_tree_generic(ctx.algebra(), w, slot_vec, k);
}

std::vector<SparseVec> EvaluationMatrix::column_vectors() const {
    std::vector<SparseVec> v;
    v.reserve(cols.size());
    for (const auto& c : cols) v.push_back(c.entries);
    return v;
}

EvaluationMatrix assemble_matrix(const EvalContext& ctx, int k, int m,
                                 const ComputeOptions& opts) {
    if (k < 0 || m < 0 || k + m < 1)
        throw std::invalid_argument("assemble_matrix needs k, m >= 0 with k + m >= 1");
    MonomialBasis basis = make_basis(k, m, opts.basis_mode, opts.degree_cap);
    EvaluationMatrix M;
    M.k = k;
    M.m = m;
    M.p = ctx.p();
    M.q = ctx.q();
    M.mode = opts.basis_mode;
    M.rows = static_cast<long>(basis.items.size());
    M.columns_before_drop = int_pow(Integer(M.p), static_cast<unsigned long>(k)) *
                            int_pow(Integer(M.q), static_cast<unsigned long>(m)) * (M.p + M.q);
    M.assignment_count =
        checked_assignment_count(k, m, M.p, M.q, opts.assignment_limit,
                                 "cell (" + std::to_string(k) + "," + std::to_string(m) +
                                     ") of " + ctx.algebra().name());
    stream_honest(ctx, basis, opts, [&](long long ai, int coord, SparseVec&& entries) {
        M.cols.push_back(EvalColumn{ai, coord, std::move(entries)});
    });
    return M;
}

CellResult partial_codimension_cell(const EvalContext& ctx, int k, int m,
                                    const ComputeOptions& opts) {
    if (k < 0 || m < 0) throw std::invalid_argument("partial_codimension needs k, m >= 0");
    CellResult r;
    r.k = k;
    r.m = m;
    if (k + m == 0) {
        r.method = "empty";
        return r;
    }
    if ((k > 0 && ctx.p() == 0) || (m > 0 && ctx.q() == 0)) {
        r.method = "no-elements";
        return r;
    }
    if (opts.use_tensor_reduction && ctx.tensor_base()) {
        if (k + m > ctx.algebra().tensor_tag()->order) {
            r.method = "tensor";
            return r;
        }
        CellResult base = partial_codimension_cell(*ctx.tensor_base(), k, m, opts);
        r.value = base.value;
        r.rank = base.rank;
        r.method = "tensor:" + base.method;
        return r;
    }
    std::string label;
    if (opts.use_component_split && !ctx.sum_parts().empty()) {
        label = "blocks";
    } else if (opts.use_vanishing_shortcut && ctx.cell_vanishes(k, m)) {
        r.method = "vanishing";
        return r;
    } else {
        label = "assembled";
    }
    MonomialBasis basis = make_basis(k, m, opts.basis_mode, opts.degree_cap);
    if (opts.rank_method == RankMethod::Exact) {
        RationalEchelon ech;
        stream_cell(ctx, basis, opts,
                    [&](long long, int, SparseVec&& col) { ech.insert(std::move(col)); });
        r.value = ech.rank();
        r.rank = RankReport{r.value, RankMethod::Exact, true, {}};
    } else {
        std::vector<SparseVec> cols;
        stream_cell(ctx, basis, opts,
                    [&](long long, int, SparseVec&& col) { cols.push_back(std::move(col)); });
        r.rank = rank_modular_checked(cols, opts.modular_certify_entry_limit);
        r.value = r.rank.rank;
    }
    r.method = label;
    return r;
}

long partial_codimension(const AlgebraWithInvolution& a, int k, int m,
                         const ComputeOptions& opts) {
    EvalContext ctx(std::make_shared<AlgebraWithInvolution>(a));
    return partial_codimension_cell(ctx, k, m, opts).value;
}

TotalCodim total_codimension_cells(const EvalContext& ctx, int n, const ComputeOptions& opts) {
    if (n < 1) throw std::invalid_argument("total codimension needs n >= 1");
    TotalCodim t;
    t.n = n;
    t.total = 0;
    for (int k = 0; k <= n; ++k) {
        t.cells.push_back(partial_codimension_cell(ctx, k, n - k, opts));
        t.total += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
                   Integer(t.cells.back().value);
    }
    return t;
}

Integer total_codimension(const AlgebraWithInvolution& a, int n, const ComputeOptions& opts) {
    EvalContext ctx(std::make_shared<AlgebraWithInvolution>(a));
    return total_codimension_cells(ctx, n, opts).total;
}

void warm_caches(const EvalContext& ctx, int n_max, const ComputeOptions& opts) {
    if (opts.use_tensor_reduction && ctx.tensor_base()) {
        warm_caches(*ctx.tensor_base(), std::min(n_max, ctx.algebra().tensor_tag()->order), opts);
        return;
    }
    if (opts.use_component_split && !ctx.sum_parts().empty()) {
        for (const auto& part : ctx.sum_parts()) warm_caches(*part, n_max, opts);
        return;
    }
    if (opts.use_vanishing_shortcut)
        for (int k = 0; k <= n_max; ++k)
            for (int m = 0; k + m <= n_max; ++m)
                if (k + m >= 1) ctx.product_span(k, m);
}

CodimSequence codim_sequence(const EvalContext& ctx, int n_max, const ComputeOptions& opts) {
    if (n_max < 1) throw std::invalid_argument("codim_sequence needs n_max >= 1");
    CodimSequence seq;
    seq.algebra_name = ctx.algebra().name();
    warm_caches(ctx, n_max, opts);

    struct Task {
        int n, k;
    };
    std::vector<Task> tasks;
    for (int n = 1; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) tasks.push_back({n, k});
    std::vector<CellResult> results(tasks.size());

    const int workers =
        std::max(1, std::min<int>(opts.jobs, static_cast<int>(tasks.size())));
    auto run = [&](size_t i) {
        results[i] = partial_codimension_cell(ctx, tasks[i].k, tasks[i].n - tasks[i].k, opts);
    };
    if (workers == 1) {
        for (size_t i = 0; i < tasks.size(); ++i) run(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex err_mutex;
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i; (i = next.fetch_add(1)) < tasks.size();) {
                    try {
                        run(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(err_mutex);
                        if (!first_error) first_error = std::current_exception();
                        next.store(tasks.size());
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    size_t at = 0;
    for (int n = 1; n <= n_max; ++n) {
        TotalCodim t;
        t.n = n;
        t.total = 0;
        for (int k = 0; k <= n; ++k, ++at) {
            t.cells.push_back(results[at]);
            t.total += binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)) *
                       Integer(results[at].value);
        }
        seq.by_degree.push_back(std::move(t));
    }
    return seq;
}

IdentitySpace identity_space(const EvalContext& ctx, int k, int m, const ComputeOptions& opts) {
    ComputeOptions o = opts;
    o.basis_mode = BasisMode::Full;  // identities live in the full multilinear space
    IdentitySpace S{make_basis(k, m, BasisMode::Full, opts.degree_cap), {}};
    if (k + m < 1) return S;
    EvaluationMatrix M = assemble_matrix(ctx, k, m, o);
    std::vector<SparseVec> as_rows;
    as_rows.reserve(M.cols.size());
    for (auto& c : M.cols) as_rows.push_back(std::move(c.entries));
    S.vectors = nullspace_basis(rref_sparse(std::move(as_rows), static_cast<int>(M.rows)),
                                static_cast<int>(M.rows));
    return S;
}

IdentityCheck is_identity(const EvalContext& ctx, const MonomialBasis& basis,
                          const std::vector<Rational>& coeffs, const ComputeOptions& opts) {
    if (coeffs.size() != basis.items.size())
        throw std::invalid_argument("coefficient count does not match the basis");
    std::vector<std::pair<size_t, const Rational*>> support;
    for (size_t r = 0; r < coeffs.size(); ++r)
        if (coeffs[r] != 0) support.emplace_back(r, &coeffs[r]);
    IdentityCheck res;
    if (support.empty()) return res;
    const int k = basis.k, m = basis.m;
    const int p = ctx.p(), q = ctx.q();
    const long long total =
        checked_assignment_count(k, m, p, q, opts.assignment_limit,
                                 "identity check (" + std::to_string(k) + "," +
                                     std::to_string(m) + ") on " + ctx.algebra().name());
    const int d = ctx.algebra().dim();
    std::vector<Rational> dense(d);
    std::vector<const SparseVec*> slot_vec(k + m);
    Odometer od(k, m, p, q);
    for (long long ai = 0; ai < total; ++ai, od.advance()) {
        for (int s = 0; s < k; ++s) slot_vec[s] = &ctx.symmetric_sparse()[od.digits[s]];
        for (int s = 0; s < m; ++s) slot_vec[k + s] = &ctx.skew_sparse()[od.digits[k + s]];
        std::fill(dense.begin(), dense.end(), Rational(0));
        for (const auto& [r, c] : support) {
            SparseVec val = eval_tree_generic(ctx.algebra(), basis.items[r], slot_vec, k);
            for (const auto& [coord, x] : val) dense[coord] += *c * x;
        }
        SparseVec nz = to_sparse(dense);
        if (!nz.empty()) {
            res.holds = false;
            res.counterexample = assignment_from_index(ai, k, m, p, q);
            res.value = std::move(nz);
            return res;
        }
    }
    return res;
}

SubsetCheck identity_subset_check(const EvalContext& A, const EvalContext& B, int k, int m,
                                  const ComputeOptions& opts) {
    IdentitySpace ida = identity_space(A, k, m, opts);
    ComputeOptions o = opts;
    o.basis_mode = BasisMode::Full;
    EvaluationMatrix MB = assemble_matrix(B, k, m, o);
    SubsetCheck res;
    for (const auto& u : ida.vectors) {
        for (const auto& col : MB.cols) {
            Rational dot(0);
            for (const auto& [r, x] : col.entries) dot += u[r] * x;
            if (dot != 0) {
                res.contained = false;
                res.violating = u;
                res.counterexample = assignment_from_index(col.assignment, k, m, MB.p, MB.q);
                return res;
            }
        }
    }
    return res;
}

WitnessCertificate witness_lower_bound(const EvalContext& ctx,
                                       std::vector<MultilinearMonomial> monomials,
                                       std::vector<WitnessAssignment> assignments) {
    const auto& a = ctx.algebra();
    if (monomials.empty()) {
        WitnessCertificate cert;  // no rows, rank 0 by convention
        cert.algebra_name = a.name();
        cert.assignments = std::move(assignments);
        return cert;
    }
    const auto [k, m] = multidegree_checked(monomials[0]);
    for (const auto& w : monomials)
        if (multidegree_checked(w) != std::make_pair(k, m))
            throw StructuralError("witness monomials must share one multidegree");
    const int d = a.dim();
    auto check_side = [&](const std::vector<int>& idxs, int count, bool skew) {
        if (static_cast<int>(idxs.size()) != count)
            throw StructuralError("witness assignment has the wrong shape");
        for (int i : idxs) {
            if (i < 0 || i >= d) throw StructuralError("witness basis index out of range");
            SparseVec e{{i, Rational(1)}};
            SparseVec se = a.star(e);
            SparseVec want = e;
            if (skew) want[0].second = -1;
            if (se != want)
                throw StructuralError("witness element " + a.labels()[i] + " is not " +
                                      (skew ? "skew" : "symmetric"));
        }
    };
    std::vector<SparseVec> units(d);
    for (int i = 0; i < d; ++i) units[i] = SparseVec{{i, Rational(1)}};

    RationalEchelon ech;
    for (const auto& asg : assignments) {
        check_side(asg.x_to_basis, k, false);
        check_side(asg.y_to_basis, m, true);
        std::vector<const SparseVec*> slot_vec(k + m);
        for (int i = 0; i < k; ++i) slot_vec[i] = &units[asg.x_to_basis[i]];
        for (int j = 0; j < m; ++j) slot_vec[k + j] = &units[asg.y_to_basis[j]];
        std::vector<SparseVec> acc(d);
        for (size_t r = 0; r < monomials.size(); ++r) {
            SparseVec val = eval_tree_generic(a, monomials[r], slot_vec, k);
            for (const auto& [c, x] : val) acc[c].emplace_back(static_cast<int>(r), x);
        }
        for (auto& col : acc)
            if (!col.empty()) ech.insert(std::move(col));
    }
    WitnessCertificate cert;
    cert.algebra_name = a.name();
    cert.k = k;
    cert.m = m;
    cert.monomials = std::move(monomials);
    cert.assignments = std::move(assignments);
    cert.rank = ech.rank();
    return cert;
}

CertificateCheck verify_certificate(const EvalContext& ctx, const WitnessCertificate& cert) {
    if (cert.algebra_name != ctx.algebra().name())
        throw StructuralError("certificate was issued for \"" + cert.algebra_name +
                              "\" but the algebra is \"" + ctx.algebra().name() + "\"");
    WitnessCertificate redo = witness_lower_bound(ctx, cert.monomials, cert.assignments);
    return CertificateCheck{redo.rank, redo.rank == cert.rank};
}

void save_certificate(const WitnessCertificate& cert, const AlgebraWithInvolution& a,
                      std::ostream& out) {
    out << "algebra " << cert.algebra_name << "\n";
    out << "signature " << cert.k << " " << cert.m << "\n";
    for (const auto& w : cert.monomials) out << "monomial " << monomial_to_string(w) << "\n";
    for (const auto& asg : cert.assignments) {
        out << "assign";
        for (int i = 0; i < cert.k; ++i)
            out << " x" << (i + 1) << "=" << a.labels()[asg.x_to_basis[i]];
        for (int j = 0; j < cert.m; ++j)
            out << " y" << (j + 1) << "=" << a.labels()[asg.y_to_basis[j]];
        out << "\n";
    }
    out << "rank " << cert.rank << "\n";
}

WitnessCertificate load_certificate(std::istream& in, const AlgebraWithInvolution& a,
                                    const std::string& source_name) {
    WitnessCertificate cert;
    bool have_name = false, have_sig = false, have_rank = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(source_name + ":" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "algebra") {
            std::string rest;
            std::getline(ls, rest);
            const auto b = rest.find_first_not_of(" \t");
            if (b == std::string::npos) throw fail("algebra line needs a name");
            cert.algebra_name = rest.substr(b, rest.find_last_not_of(" \t") - b + 1);
            have_name = true;
        } else if (head == "signature") {
            if (!(ls >> cert.k >> cert.m) || cert.k < 0 || cert.m < 0)
                throw fail("signature needs k m with k, m >= 0");
            have_sig = true;
        } else if (head == "monomial") {
            if (!have_sig) throw fail("monomial before signature");
            std::string rest;
            std::getline(ls, rest);
            const auto b = rest.find_first_not_of(" \t");
            if (b == std::string::npos) throw fail("monomial line needs a term");
            try {
                cert.monomials.push_back(parse_monomial(
                    rest.substr(b, rest.find_last_not_of(" \t") - b + 1), cert.k, cert.m));
            } catch (const ParseError& e) {
                throw fail(e.what());
            }
        } else if (head == "assign") {
            if (!have_sig) throw fail("assign before signature");
            WitnessAssignment asg;
            asg.x_to_basis.assign(cert.k, -1);
            asg.y_to_basis.assign(cert.m, -1);
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) throw fail("assign token \"" + tok + "\" needs var=label");
                const std::string var = tok.substr(0, eq), label = tok.substr(eq + 1);
                const int idx = a.label_index(label);
                if (idx < 0) throw fail("unknown basis label \"" + label + "\"");
                if (var.size() < 2 || (var[0] != 'x' && var[0] != 'y'))
                    throw fail("assign variable \"" + var + "\" must be x<i> or y<j>");
                int vi = 0;
                try {
                    vi = std::stoi(var.substr(1));
                } catch (...) {
                    throw fail("assign variable \"" + var + "\" must be x<i> or y<j>");
                }
                auto& side = var[0] == 'x' ? asg.x_to_basis : asg.y_to_basis;
                const int limit = var[0] == 'x' ? cert.k : cert.m;
                if (vi < 1 || vi > limit) throw fail("assign variable \"" + var + "\" out of range");
                if (side[vi - 1] != -1) throw fail("assign repeats \"" + var + "\"");
                side[vi - 1] = idx;
            }
            for (int i : asg.x_to_basis)
                if (i < 0) throw fail("assign line is missing an x variable");
            for (int j : asg.y_to_basis)
                if (j < 0) throw fail("assign line is missing a y variable");
            cert.assignments.push_back(std::move(asg));
        } else if (head == "rank") {
            if (!(ls >> cert.rank) || cert.rank < 0) throw fail("rank needs a value >= 0");
            have_rank = true;
        } else {
            throw fail("unknown directive \"" + head + "\"");
        }
    }
    if (!have_name) throw ParseError(source_name + ": missing algebra line");
    if (!have_sig) throw ParseError(source_name + ": missing signature line");
    if (!have_rank) throw ParseError(source_name + ": missing rank line");
    return cert;
}

}  // namespace starcodim

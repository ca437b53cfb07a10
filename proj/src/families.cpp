#include "starcodim/families.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numeric>

namespace starcodim {

namespace {

// mpfr_t with RAII; pass raw() straight to mpfr calls.
class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpf() { mpfr_clear(v_); }
    Mpf(const Mpf&) = delete;
    Mpf& operator=(const Mpf&) = delete;
    mpfr_t& raw() { return v_; }
    const mpfr_t& raw() const { return v_; }

private:
    mpfr_t v_;
};

AlgebraPtr with_name(const AlgebraPtr& a, std::string name) {
    auto out = std::make_shared<AlgebraWithInvolution>(std::move(name), a->labels(),
                                                       a->products(), a->involution());
    if (a->tensor_tag()) out->set_tensor_tag(*a->tensor_tag());
    out->set_sum_parts(a->sum_parts());
    return out;
}

MultilinearMonomial left_word(std::vector<VarRef> seq) {
    const int n = static_cast<int>(seq.size());
    return MultilinearMonomial{left_comb_tree(n), std::move(seq)};
}

double approx_log2(const Rational& a) {
    Mpf f(64);
    mpfr_set_q(f.raw(), a.get_mpq_t(), MPFR_RNDN);
    mpfr_log2(f.raw(), f.raw(), MPFR_RNDN);
    return mpfr_get_d(f.raw(), MPFR_RNDN);
}

// Interval for n * ln(alpha) with alpha > 0, n >= 0: lo into rlo, hi into rhi.
void power_log_interval(const Integer& n, const Rational& alpha, Mpf& rlo, Mpf& rhi,
                        mpfr_prec_t prec) {
    Mpf la(prec), nn(prec);
    mpfr_set_q(la.raw(), alpha.get_mpq_t(), MPFR_RNDU);
    mpfr_log(la.raw(), la.raw(), MPFR_RNDU);
    mpfr_set_z(nn.raw(), n.get_mpz_t(), MPFR_RNDU);
    mpfr_mul(rhi.raw(), nn.raw(), la.raw(), MPFR_RNDU);
    mpfr_set_q(la.raw(), alpha.get_mpq_t(), MPFR_RNDD);
    mpfr_log(la.raw(), la.raw(), MPFR_RNDD);
    mpfr_set_z(nn.raw(), n.get_mpz_t(), MPFR_RNDD);
    mpfr_mul(rlo.raw(), nn.raw(), la.raw(), MPFR_RNDD);
}

// +1 / -1 when lnGamma(m+1) >= / < n * ln(alpha) is certified, else 0.
int lngamma_test_at(const Integer& m, const Rational& alpha, const Integer& n,
                    mpfr_prec_t prec) {
    const Integer m1 = m + 1;
    Mpf arg(prec), lg_lo(prec), lg_hi(prec), rhs_lo(prec), rhs_hi(prec);
    mpfr_set_z(arg.raw(), m1.get_mpz_t(), MPFR_RNDD);
    mpfr_lngamma(lg_lo.raw(), arg.raw(), MPFR_RNDD);
    mpfr_set_z(arg.raw(), m1.get_mpz_t(), MPFR_RNDU);
    mpfr_lngamma(lg_hi.raw(), arg.raw(), MPFR_RNDU);
    power_log_interval(n, alpha, rhs_lo, rhs_hi, prec);
    if (mpfr_cmp(lg_lo.raw(), rhs_hi.raw()) >= 0) return +1;
    if (mpfr_cmp(lg_hi.raw(), rhs_lo.raw()) < 0) return -1;
    return 0;
}

// Can m! >= alpha^n be settled by exact integer arithmetic within ~40MB?
bool exact_compare_feasible(const Integer& m, const Rational& alpha, const Integer& n) {
    if (!m.fits_ulong_p() || !n.fits_ulong_p()) return false;
    if (m.get_ui() > 12'000'000) return false;
    const double nd = static_cast<double>(n.get_ui());
    const double bu = static_cast<double>(mpz_sizeinbase(alpha.get_num().get_mpz_t(), 2));
    const double bv = static_cast<double>(mpz_sizeinbase(alpha.get_den().get_mpz_t(), 2));
    return nd * bu <= 3.2e8 && nd * bv <= 3.2e8;
}

int exact_compare(const Integer& m, const Rational& alpha, const Integer& n) {
    Integer lhs;
    mpz_fac_ui(lhs.get_mpz_t(), m.get_ui());
    const Integer v = alpha.get_den();
    if (v != 1) lhs *= int_pow(v, n.get_ui());
    return lhs >= int_pow(alpha.get_num(), n.get_ui()) ? +1 : -1;
}

// +1: n^3 >= alpha^n, -1: n^3 < alpha^n, 0: undecided at every precision
// and too large to settle exactly.
int cubic_vs_power(long n, const Rational& alpha) {
    const Integer n3 = Integer(n) * n * n;
    for (mpfr_prec_t prec : {mpfr_prec_t(128), mpfr_prec_t(512), mpfr_prec_t(2048)}) {
        Mpf t(prec), lhs_lo(prec), lhs_hi(prec), rhs_lo(prec), rhs_hi(prec);
        mpfr_set_z(t.raw(), n3.get_mpz_t(), MPFR_RNDD);
        mpfr_log(lhs_lo.raw(), t.raw(), MPFR_RNDD);
        mpfr_set_z(t.raw(), n3.get_mpz_t(), MPFR_RNDU);
        mpfr_log(lhs_hi.raw(), t.raw(), MPFR_RNDU);
        power_log_interval(Integer(n), alpha, rhs_lo, rhs_hi, prec);
        if (mpfr_cmp(lhs_lo.raw(), rhs_hi.raw()) >= 0) return +1;
        if (mpfr_cmp(lhs_hi.raw(), rhs_lo.raw()) < 0) return -1;
    }
    const double bu = static_cast<double>(mpz_sizeinbase(alpha.get_num().get_mpz_t(), 2));
    const double bv = static_cast<double>(mpz_sizeinbase(alpha.get_den().get_mpz_t(), 2));
    if (static_cast<double>(n) * std::max(bu, bv) <= 2e7) {
        const unsigned long nu = static_cast<unsigned long>(n);
        return n3 * int_pow(alpha.get_den(), nu) >= int_pow(alpha.get_num(), nu) ? +1 : -1;
    }
    return 0;
}

GreedyResult greedy_bound(const Rational& alpha, const GreedyOptions& opts) {
    std::vector<ScheduleStep> steps;

    // T1: the least T >= 2 with n^3 < alpha^n for every n >= T. Scan n upward
    // tracking the last failure; once some n passes AND (1+1/n)^3 <= alpha,
    // every later degree passes too ((n+1)^3 <= n^3 alpha < alpha^{n+1}).
    long last_fail = 0;
    bool settled = false;
    const Integer u = alpha.get_num(), v = alpha.get_den();
    for (long nn = 1; nn <= 10'000'000 && !settled; ++nn) {
        const int cmp = cubic_vs_power(nn, alpha);
        if (cmp == 0)
            throw IncompleteError("cubic envelope comparison undecidable at n = " +
                                      std::to_string(nn),
                                  steps);
        if (cmp > 0) {
            last_fail = nn;
            continue;
        }
        const Integer step_lhs = Integer(nn + 1) * (nn + 1) * (nn + 1) * v;
        const Integer step_rhs = Integer(nn) * nn * nn * u;
        if (step_lhs <= step_rhs) settled = true;
    }
    if (!settled)
        throw IncompleteError("cubic envelope never settled below the scan bound", steps);
    const long T1 = std::max<long>(2, last_fail + 1);
    const std::string t1_note = "T1 = " + std::to_string(T1) +
                                ": least T >= 2 with n^3 < alpha^n for all n >= T (last exact "
                                "failure at n = " +
                                std::to_string(last_fail) + ")";

    GreedyResult out;
    out.schedule.alpha = alpha;
    Integer T = T1;
    for (int k = 1; k <= opts.blocks; ++k) {
        const Integer chain = 2 * T + 1;
        const double thr_bits = chain.get_d() * approx_log2(alpha);  // ~log2 of threshold m
        if (!(thr_bits <= 1.6e9))
            throw IncompleteError("block " + std::to_string(k) +
                                      ": factorial threshold exceeds the representable range",
                                  steps);
        auto certified_at = [&](const Integer& mm) {
            return certified_factorial_vs_power(mm, alpha, chain * (mm + 1));
        };
        Integer m;
        std::string how;
        if (thr_bits <= 40.0) {
            // Small enough to pin the least m >= 2 by doubling + bisection.
            Integer lo = 2;
            if (certified_at(lo) == +1) {
                m = lo;
            } else {
                Integer hi = 4;
                while (certified_at(hi) != +1) {
                    hi *= 2;
                    if (hi > (Integer(1) << 62))
                        throw IncompleteError("block " + std::to_string(k) +
                                                  ": no certified factorial crossing found",
                                              steps);
                }
                while (hi - lo > 1) {
                    const Integer mid = (lo + hi) / 2;
                    if (certified_at(mid) == +1)
                        hi = mid;
                    else
                        lo = mid;
                }
                m = hi;
            }
            how = "least m >= 2 with certified m! >= alpha^((2T+1)(m+1))";
            if (m > 2) {
                const int below = certified_at(m - 1);
                if (below == -1)
                    how += "; m-1 certified insufficient";
                else if (below == 0)
                    how += "; m-1 undecided, minimality unconfirmed";
            }
            if (exact_compare_feasible(m, alpha, chain * (m + 1))) {
                if (exact_compare(m, alpha, chain * (m + 1)) != +1)
                    throw StructuralError("internal: certified crossing failed exact check");
                how += "; exact integer confirmation";
            }
        } else {
            // Past machine scale: take a power of two just above the floating
            // threshold and certify it; minimality is not claimed here.
            int exponent = static_cast<int>(std::ceil(thr_bits)) + 1;
            int result = 0;
            for (int tries = 0; tries <= 64 && result != +1; ++tries, ++exponent) {
                m = Integer(1) << static_cast<unsigned long>(exponent);
                result = certified_at(m);
            }
            if (result != +1)
                throw IncompleteError("block " + std::to_string(k) +
                                          ": certification did not stabilize",
                                      steps);
            how = "m = 2^" + std::to_string(exponent - 1) +
                  " certified above the factorial threshold; minimality not claimed at this "
                  "scale";
        }
        const Integer N = chain * (m + 1);
        ScheduleStep st;
        st.index = k;
        st.T = T;
        st.N = N;
        st.chain_m = m;
        st.rule = (k == 1 ? t1_note + "; " : std::string()) + how +
                  "; m = " + integer_brief(m) + ", N = (2T+1)(m+1) = " + integer_brief(N) +
                  ", next T doubles N";
        steps.push_back(st);
        out.schedule.blocks.emplace_back(T, N);
        T = 2 * N;
    }
    out.steps = std::move(steps);
    validate_schedule(out.schedule);
    return out;
}

GreedyResult greedy_computed(const Rational& alpha, const GreedyOptions& opts) {
    if (opts.first_T < 2) throw StructuralError("the starting T must be >= 2");
    if (opts.horizon < 1) throw StructuralError("the degree horizon must be >= 1");
    const Integer u = alpha.get_num(), v = alpha.get_den();
    std::vector<ScheduleStep> steps;
    GreedyResult out;
    out.schedule.alpha = alpha;
    long T = opts.first_T;
    for (int k = 1; k <= opts.blocks; ++k) {
        bool found = false;
        for (long n = T + 1; n <= opts.horizon && !found; ++n) {
            const auto slice = make_tilde_slice(static_cast<int>(T), static_cast<int>(n));
            EvalContext ctx(slice);
            const TotalCodim tc = total_codimension_cells(ctx, static_cast<int>(n), opts.compute);
            const unsigned long nu = static_cast<unsigned long>(n);
            if (tc.total * int_pow(v, nu) >= int_pow(u, nu)) {
                ScheduleStep st;
                st.index = k;
                st.T = T;
                st.N = n;
                st.crossing = tc.total;
                st.rule = "computed: c*_" + std::to_string(n) + " of slice (T = " +
                          std::to_string(T) + ", M = " + std::to_string(n) + ") is " +
                          tc.total.get_str() + " >= alpha^" + std::to_string(n) +
                          "; probed degrees " + std::to_string(T + 1) + ".." + std::to_string(n) +
                          ", next T = N+1";
                steps.push_back(st);
                out.schedule.blocks.emplace_back(Integer(T), Integer(n));
                T = n + 1;
                found = true;
            }
        }
        if (!found)
            throw IncompleteError("block " + std::to_string(k) + ": no degree in (" +
                                      std::to_string(T) + ", " + std::to_string(opts.horizon) +
                                      "] certifies alpha^n growth; raise the horizon",
                                  steps);
    }
    out.steps = std::move(steps);
    validate_schedule(out.schedule);
    return out;
}

}  // namespace

AlgebraPtr make_A_T(int T) {
    if (T < 2) throw StructuralError("chain algebra needs T >= 2");
    const int d = 2 * T + 3;  // a, b, z_1..z_{2T+1}
    std::vector<std::string> labels{"a", "b"};
    for (int i = 1; i <= 2 * T + 1; ++i) labels.push_back("z" + std::to_string(i));
    std::vector<SparseVec> products(static_cast<size_t>(d) * d);
    auto set = [&](int i, int j, int target) {
        products[static_cast<size_t>(i) * d + j] = SparseVec{{target, Rational(1)}};
    };
    for (int i = 1; i <= 2 * T; ++i) {
        set(1 + i, 0, 2 + i);  // z_i a = z_{i+1}
        set(0, 1 + i, 2 + i);  // a z_i = z_{i+1}
    }
    set(2 + 2 * T, 1, 2);  // z_{2T+1} b = z_1
    set(1, 2 + 2 * T, 2);  // b z_{2T+1} = z_1
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, Rational(0)));
    inv[0][0] = -1;  // a* = -a
    inv[1][1] = 1;   // b* = b
    for (int i = 1; i <= 2 * T + 1; ++i) inv[1 + i][1 + i] = (i % 2 == 1) ? 1 : -1;
    return std::make_shared<AlgebraWithInvolution>("A_" + std::to_string(T), std::move(labels),
                                                   std::move(products), std::move(inv));
}

AlgebraPtr make_tilde_slice(int T, int M) {
    if (T < 2) throw StructuralError("slice needs T >= 2");
    if (M < 1) throw StructuralError("slice needs M >= 1");
    const int len = 2 * T + 1;
    const int d = 1 + M + (M + 1) * len;  // a, b_1..b_M, z^i_j (i <= M+1, j <= len)
    auto zi = [&](int i, int j) { return M + (i - 1) * len + j; };
    std::vector<std::string> labels{"a"};
    for (int i = 1; i <= M; ++i) labels.push_back("b" + std::to_string(i));
    for (int i = 1; i <= M + 1; ++i)
        for (int j = 1; j <= len; ++j)
            labels.push_back("z" + std::to_string(i) + "_" + std::to_string(j));
    std::vector<SparseVec> products(static_cast<size_t>(d) * d);
    auto set = [&](int i, int j, int target) {
        products[static_cast<size_t>(i) * d + j] = SparseVec{{target, Rational(1)}};
    };
    for (int i = 1; i <= M + 1; ++i)
        for (int j = 1; j <= 2 * T; ++j) {
            set(zi(i, j), 0, zi(i, j + 1));  // z^i_j a = z^i_{j+1}
            set(0, zi(i, j), zi(i, j + 1));
        }
    for (int i = 1; i <= M; ++i) {
        set(zi(i, len), i, zi(i + 1, 1));  // z^i_{2T+1} b_i = z^{i+1}_1
        set(i, zi(i, len), zi(i + 1, 1));
    }
    std::vector<std::vector<Rational>> inv(d, std::vector<Rational>(d, Rational(0)));
    inv[0][0] = -1;
    for (int i = 1; i <= M; ++i) inv[i][i] = 1;
    for (int i = 1; i <= M + 1; ++i)
        for (int j = 1; j <= len; ++j) inv[zi(i, j)][zi(i, j)] = (j % 2 == 1) ? 1 : -1;
    return std::make_shared<AlgebraWithInvolution>(
        "Atilde_" + std::to_string(T) + "_" + std::to_string(M), std::move(labels),
        std::move(products), std::move(inv));
}

AlgebraPtr make_B_slice(int T, int N, int M) {
    if (N < 1) throw StructuralError("nilpotency order needs N >= 1");
    return with_name(nilpotent_tensor(make_tilde_slice(T, M), N),
                     "B_" + std::to_string(T) + "_" + std::to_string(N) + "_" +
                         std::to_string(M));
}

void validate_schedule(const BlockSchedule& s) {
    if (s.blocks.empty()) throw StructuralError("schedule has no blocks");
    Integer prev = 1;
    for (size_t i = 0; i < s.blocks.size(); ++i) {
        const auto& [T, N] = s.blocks[i];
        const std::string at = "schedule block " + std::to_string(i + 1) + ": ";
        if (T < 2) throw StructuralError(at + "T must be >= 2");
        if (T <= prev) throw StructuralError(at + "T must exceed the previous N");
        if (N <= T) throw StructuralError(at + "N must exceed T");
        prev = N;
    }
}

AlgebraPtr make_C_prefix(const BlockSchedule& s, const std::vector<int>& slice_sizes) {
    validate_schedule(s);
    if (slice_sizes.size() != s.blocks.size())
        throw StructuralError("need exactly one slice size per schedule block");
    std::vector<AlgebraPtr> parts;
    for (size_t i = 0; i < s.blocks.size(); ++i) {
        const auto& [T, N] = s.blocks[i];
        if (!T.fits_sint_p() || !N.fits_sint_p())
            throw StructuralError("schedule block " + std::to_string(i + 1) +
                                  " is too large to materialize");
        if (slice_sizes[i] < 1) throw StructuralError("slice sizes must be >= 1");
        parts.push_back(make_B_slice(static_cast<int>(T.get_si()),
                                     static_cast<int>(N.get_si()), slice_sizes[i]));
    }
    return direct_sum(parts);
}

bool chain_word_nonzero(int T, const std::vector<int>& word) {
    if (T < 2) throw StructuralError("chain walk needs T >= 2");
    if (word.size() < 2) throw StructuralError("chain walk needs a word of length >= 2");
    const int d = 2 * T + 3;
    int zpos = -1;
    for (size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 0 || word[i] >= d) throw StructuralError("basis index out of range");
        if (word[i] >= 2) {
            if (zpos >= 0) return false;  // two chain elements annihilate
            zpos = static_cast<int>(i);
        }
    }
    if (zpos < 0 || zpos > 1) return false;  // chain element must enter by the 2nd factor
    int pos = word[zpos] - 1;  // z_pos subscript
    for (size_t i = 0; i < word.size(); ++i) {
        if (static_cast<int>(i) == zpos) continue;
        if (word[i] == 0) {  // a advances while the chain lasts
            if (pos > 2 * T) return false;
            ++pos;
        } else {  // b wraps exactly at the end
            if (pos != 2 * T + 1) return false;
            pos = 1;
        }
    }
    return true;
}

WitnessCertificate chain_witness(int T, int chains, int tail) {
    if (chains < 0) throw StructuralError("chain witness needs chains >= 0");
    if (tail < 0 || tail > 2 * T) throw StructuralError("chain witness needs 0 <= tail <= 2T");
    const auto a = make_A_T(T);
    EvalContext ctx(a);
    const int k = chains + 1, m = 2 * T * chains + tail;
    std::vector<VarRef> seq;
    seq.reserve(k + m);
    seq.push_back({false, 1});
    int y = 1;
    for (int c = 1; c <= chains; ++c) {
        for (int j = 0; j < 2 * T; ++j) seq.push_back({true, y++});
        seq.push_back({false, c + 1});
    }
    for (int j = 0; j < tail; ++j) seq.push_back({true, y++});
    WitnessAssignment asg;
    asg.x_to_basis.push_back(2);  // z_1
    asg.x_to_basis.insert(asg.x_to_basis.end(), chains, 1);  // b
    asg.y_to_basis.assign(m, 0);                             // a
    return witness_lower_bound(ctx, {left_word(std::move(seq))}, {std::move(asg)});
}

WitnessCertificate factorial_witness(int T, int M, int m, int tail) {
    if (m < 1) throw StructuralError("factorial witness needs m >= 1");
    if (m > M) throw StructuralError("factorial witness needs m <= M");
    if (m > 8) throw ResourceError("factorial witness: m! rows past m = 8 are not materialized");
    if (tail < 0 || tail > 2 * T) throw StructuralError("factorial witness needs 0 <= tail <= 2T");
    const auto slice = make_tilde_slice(T, M);
    EvalContext ctx(slice);
    const int skew_count = 2 * T * m + tail;
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<MultilinearMonomial> monomials;
    std::vector<WitnessAssignment> assignments;
    do {
        std::vector<VarRef> seq;
        seq.reserve(1 + m + skew_count);
        seq.push_back({false, 1});
        int y = 1;
        for (int r = 0; r < m; ++r) {
            for (int j = 0; j < 2 * T; ++j) seq.push_back({true, y++});
            seq.push_back({false, 1 + perm[r]});
        }
        for (int j = 0; j < tail; ++j) seq.push_back({true, y++});
        monomials.push_back(left_word(std::move(seq)));

        WitnessAssignment asg;
        asg.x_to_basis.push_back(M + 1);  // z^1_1
        for (int i = 0; i < m; ++i) asg.x_to_basis.push_back(perm[i]);  // x_{1+i} -> b_{perm(i)}
        asg.y_to_basis.assign(skew_count, 0);                           // a
        assignments.push_back(std::move(asg));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return witness_lower_bound(ctx, std::move(monomials), std::move(assignments));
}

GreedyResult greedy_schedule(const Rational& alpha, const GreedyOptions& opts) {
    if (alpha <= 1) throw StructuralError("the growth target alpha must exceed 1");
    if (opts.blocks < 1) throw StructuralError("need at least one block");
    return opts.mode == ScheduleMode::Bound ? greedy_bound(alpha, opts)
                                            : greedy_computed(alpha, opts);
}

int certified_factorial_vs_power(const Integer& m, const Rational& alpha, const Integer& n) {
    if (m < 0) throw StructuralError("factorial argument must be >= 0");
    if (n < 0) throw StructuralError("the exponent must be >= 0");
    if (sgn(alpha) <= 0) throw StructuralError("alpha must be positive");
    if (alpha <= 1 || n == 0) return +1;  // m! >= 1 >= alpha^n
    for (mpfr_prec_t prec : {mpfr_prec_t(256), mpfr_prec_t(1024), mpfr_prec_t(4096)}) {
        const int r = lngamma_test_at(m, alpha, n, prec);
        if (r != 0) return r;
    }
    if (exact_compare_feasible(m, alpha, n)) return exact_compare(m, alpha, n);
    return 0;
}

std::string integer_brief(const Integer& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 10) <= 40) return v.get_str();
    Mpf f(96);
    mpfr_set_z(f.raw(), v.get_mpz_t(), MPFR_RNDN);
    char buf[160];
    mpfr_snprintf(buf, sizeof buf, "%.6Re", f.raw());
    return std::string("~") + buf + " (bits=" +
           std::to_string(mpz_sizeinbase(v.get_mpz_t(), 2)) + ")";
}

}  // namespace starcodim

#include "starcodim/analysis.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <sstream>

namespace starcodim {

namespace {

class Mpf {
public:
    explicit Mpf(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~Mpf() { mpfr_clear(v_); }
    Mpf(const Mpf&) = delete;
    Mpf& operator=(const Mpf&) = delete;
    mpfr_t& raw() { return v_; }

private:
    mpfr_t v_;
};

std::string rational_decimal(const Rational& r, int sig = 20) {
    Mpf f(192);
    mpfr_set_q(f.raw(), r.get_mpq_t(), MPFR_RNDN);
    char buf[96];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", sig - 1, f.raw());
    return buf;
}

Rational rational_pow(Rational base, unsigned long e) {
    Rational out(1);
    while (e != 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

BoundRow row_of(std::string bound, int n, std::string lhs, std::string rhs, bool ok,
                std::string margin) {
    return BoundRow{std::move(bound), n, std::move(lhs), std::move(rhs),
                    ok ? "pass" : "fail", std::move(margin)};
}

BoundRow na_row(std::string bound, int n) { return BoundRow{std::move(bound), n, "NA", "NA", "info", "NA"}; }

// ln(beta_T) = theta ln(2T+1) + (1-theta) ln((2T+1)/(2T)), all terms
// positive, so one directed rounding mode per endpoint stays sound.
void beta_endpoint(int T, mpfr_t out, mpfr_rnd_t rnd) {
    const mpfr_prec_t prec = mpfr_get_prec(out);
    Mpf theta(prec), big(prec), term(prec), acc(prec);
    const Rational th(1, 2 * T + 1), co(2 * T, 2 * T + 1), ratio(2 * T + 1, 2 * T);
    mpfr_set_q(theta.raw(), th.get_mpq_t(), rnd);
    mpfr_set_ui(big.raw(), 2 * T + 1, rnd);
    mpfr_log(big.raw(), big.raw(), rnd);
    mpfr_mul(acc.raw(), theta.raw(), big.raw(), rnd);
    mpfr_set_q(theta.raw(), co.get_mpq_t(), rnd);
    mpfr_set_q(big.raw(), ratio.get_mpq_t(), rnd);
    mpfr_log(big.raw(), big.raw(), rnd);
    mpfr_mul(term.raw(), theta.raw(), big.raw(), rnd);
    mpfr_add(acc.raw(), acc.raw(), term.raw(), rnd);
    mpfr_exp(out, acc.raw(), rnd);
}

}  // namespace

std::pair<Rational, Rational> beta_bounds(int T) {
    if (T < 2) throw StructuralError("exponent constants need T >= 2");
    Mpf lo(256), hi(256);
    beta_endpoint(T, lo.raw(), MPFR_RNDD);
    beta_endpoint(T, hi.raw(), MPFR_RNDU);
    Rational qlo, qhi;
    mpfr_get_q(qlo.get_mpq_t(), lo.raw());
    mpfr_get_q(qhi.get_mpq_t(), hi.raw());
    return {qlo, qhi};
}

ExponentConstants exponent_constants(int T) {
    if (T < 2) throw StructuralError("exponent constants need T >= 2");
    ExponentConstants out;
    out.T = T;
    out.theta = Rational(1, 2 * T + 1);
    Mpf lo(256), hi(256);
    beta_endpoint(T, lo.raw(), MPFR_RNDD);
    beta_endpoint(T, hi.raw(), MPFR_RNDU);
    char buf[96];
    mpfr_snprintf(buf, sizeof buf, "%.35RDe", lo.raw());
    out.beta_lo = buf;
    mpfr_snprintf(buf, sizeof buf, "%.35RUe", hi.raw());
    out.beta_hi = buf;
    return out;
}

bool BoundReport::all_pass() const {
    return std::none_of(rows.begin(), rows.end(),
                        [](const BoundRow& r) { return r.pass == "fail"; });
}

std::string to_csv(const BoundReport& r) {
    std::ostringstream out;
    out << "bound,n,lhs,rhs,pass,margin\n";
    for (const auto& row : r.rows)
        out << row.bound << "," << row.n << "," << row.lhs << "," << row.rhs << "," << row.pass
            << "," << row.margin << "\n";
    return out.str();
}

std::string to_table(const BoundReport& r) {
    const std::array<std::string, 6> head{"bound", "n", "lhs", "rhs", "pass", "margin"};
    std::array<size_t, 6> w;
    for (size_t c = 0; c < 6; ++c) w[c] = head[c].size();
    auto cells = [](const BoundRow& row) {
        return std::array<std::string, 6>{row.bound,  std::to_string(row.n), row.lhs,
                                          row.rhs,    row.pass,              row.margin};
    };
    for (const auto& row : r.rows) {
        const auto cs = cells(row);
        for (size_t c = 0; c < 6; ++c) w[c] = std::max(w[c], cs[c].size());
    }
    std::ostringstream out;
    out << "# " << r.name << "\n";
    auto emit = [&](const std::array<std::string, 6>& cs) {
        for (size_t c = 0; c < 6; ++c) {
            out << cs[c] << std::string(w[c] - cs[c].size(), ' ');
            out << (c + 1 < 6 ? "  " : "");
        }
        out << "\n";
    };
    emit(head);
    for (const auto& row : r.rows) emit(cells(row));
    return out.str();
}

BoundReport check_dimension_envelope(int d, const CodimSequence& seq) {
    if (d < 1) throw StructuralError("the dimension must be >= 1");
    BoundReport rep{"dim-envelope", {}};
    for (const auto& tc : seq.by_degree) {
        const Integer rhs = int_pow(Integer(d), static_cast<unsigned long>(tc.n) + 1);
        rep.rows.push_back(row_of("dim-envelope", tc.n, tc.total.get_str(), rhs.get_str(),
                                  tc.total <= rhs, Integer(rhs - tc.total).get_str()));
    }
    return rep;
}

BoundReport check_cubic_envelope(const CodimSequence& seq, int T) {
    if (T < 2) throw StructuralError("cubic envelope needs T >= 2");
    BoundReport rep{"cubic-envelope", {}};
    for (const auto& tc : seq.by_degree) {
        if (tc.n > 2 * T) {
            rep.rows.push_back(na_row("cubic-envelope", tc.n));
            continue;
        }
        const Integer rhs = Integer(tc.n) * tc.n * tc.n;
        BoundRow r = row_of("cubic-envelope", tc.n, tc.total.get_str(), rhs.get_str(),
                            tc.total <= rhs, Integer(rhs - tc.total).get_str());
        if (tc.n <= 2) r.pass = "info";  // raw comparison recorded, claim starts at n = 3
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

BoundReport check_sandwich(const CodimSequence& seq, int T) {
    const auto [beta_lo, beta_hi] = beta_bounds(T);
    BoundReport rep{"sandwich", {}};
    for (const auto& tc : seq.by_degree) {
        const unsigned long n = static_cast<unsigned long>(tc.n);
        const Rational c(tc.total);
        if (tc.n >= 2 * T + 2) {
            // worst end of the enclosure for a lower bound is the high one
            const Rational lhs =
                rational_pow(beta_hi, n - 2 * static_cast<unsigned long>(T) - 1) /
                (Rational(tc.n) * tc.n);
            rep.rows.push_back(row_of("sandwich-lower", tc.n, rational_decimal(lhs),
                                      tc.total.get_str(), lhs <= c, rational_decimal(c - lhs)));
        } else {
            rep.rows.push_back(na_row("sandwich-lower", tc.n));
        }
        const Rational cap = Rational(3) * (2 * T + 1) * (2 * T + 1) * (2 * T + 1) *
                             Rational(tc.n) * tc.n * tc.n * rational_pow(beta_lo, n);
        rep.rows.push_back(row_of("sandwich-upper", tc.n, tc.total.get_str(),
                                  rational_decimal(cap), c <= cap, rational_decimal(cap - c)));
    }
    return rep;
}

BoundReport check_support(const CodimSequence& seq, int T) {
    if (T < 2) throw StructuralError("support check needs T >= 2");
    BoundReport rep{"support", {}};
    const Rational cap(1, 2 * T + 1);
    for (const auto& tc : seq.by_degree) {
        int nonzero = 0;
        for (const auto& cell : tc.cells)
            if (cell.value != 0) ++nonzero;
        rep.rows.push_back(row_of("support-count", tc.n, std::to_string(nonzero), "3",
                                  nonzero <= 3, std::to_string(3 - nonzero)));
        for (const auto& cell : tc.cells) {
            if (cell.value == 0) continue;
            Rational ratio(cell.k - 2, tc.n);
            ratio.canonicalize();
            rep.rows.push_back(row_of("support-ratio(k=" + std::to_string(cell.k) + ")", tc.n,
                                      to_string(ratio), to_string(cap), ratio <= cap,
                                      to_string(Rational(cap - ratio))));
        }
    }
    return rep;
}

BoundReport check_cell_cap(const CodimSequence& seq, int T) {
    if (T < 2) throw StructuralError("cell cap needs T >= 2");
    BoundReport rep{"cell-cap", {}};
    const Integer cap = Integer(2 * T + 1) * (2 * T + 1) * (2 * T + 1);
    for (const auto& tc : seq.by_degree) {
        if (tc.n > 2 * T + 2) {
            rep.rows.push_back(na_row("cell-cap", tc.n));
            continue;
        }
        for (const auto& cell : tc.cells)
            rep.rows.push_back(row_of(
                "cell-cap(k=" + std::to_string(cell.k) + ",m=" + std::to_string(cell.m) + ")",
                tc.n, std::to_string(cell.value), cap.get_str(), cell.value <= cap,
                Integer(cap - cell.value).get_str()));
    }
    return rep;
}

BoundReport check_stepwise_growth(const CodimSequence& seq) {
    BoundReport rep{"stepwise-growth", {}};
    for (const auto& tc : seq.by_degree) {
        if (tc.n < 2) {
            rep.rows.push_back(na_row("stepwise-growth", tc.n));
            continue;
        }
        const Integer prev = seq.by_degree[static_cast<size_t>(tc.n) - 2].total;
        const Integer rhs = Integer(3) * tc.n * prev;
        rep.rows.push_back(row_of("stepwise-growth", tc.n, tc.total.get_str(), rhs.get_str(),
                                  tc.total <= rhs, Integer(rhs - tc.total).get_str()));
    }
    return rep;
}

BoundReport stirling_binomial_check(int T, int k_max) {
    if (T < 2 || k_max < 1) throw StructuralError("binomial check needs T >= 2, k_max >= 1");
    BoundReport rep{"binomial-stirling", {}};
    for (int k = 1; k <= k_max; ++k) {
        const unsigned long N = static_cast<unsigned long>(2 * T + 1) * k;
        const unsigned long ku = static_cast<unsigned long>(k);
        const Integer bin = binomial(N, ku);
        const Rational expr =
            Rational(int_pow(Integer(N), N)) /
            (Rational(int_pow(Integer(ku), ku)) * int_pow(Integer(2 * T * ku), 2 * T * ku) *
             Integer(N) * Integer(N));
        // strict: the binomial must exceed the Stirling-style expression
        rep.rows.push_back(row_of("binomial-stirling(k=" + std::to_string(k) + ")",
                                  static_cast<int>(N), rational_decimal(expr), bin.get_str(),
                                  expr < bin, rational_decimal(Rational(bin) - expr)));
    }
    return rep;
}

ExponentWindowEstimate window_estimate(const CodimSequence& seq, int lo, int hi) {
    if (lo < 1 || hi < lo) throw StructuralError("window needs 1 <= lo <= hi");
    if (static_cast<size_t>(hi) > seq.by_degree.size())
        throw StructuralError("window end exceeds the computed degrees");
    ExponentWindowEstimate out;
    out.lo = lo;
    out.hi = hi;
    Mpf root(128), best_lo(128), best_hi(128);
    bool any = false;
    for (int n = lo; n <= hi; ++n) {
        const Integer& c = seq.by_degree[static_cast<size_t>(n) - 1].total;
        if (c == 0) {
            out.roots.emplace_back(n, "NA");
            continue;
        }
        mpfr_set_z(root.raw(), c.get_mpz_t(), MPFR_RNDN);
        mpfr_rootn_ui(root.raw(), root.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        char buf[64];
        mpfr_snprintf(buf, sizeof buf, "%.19Re", root.raw());
        out.roots.emplace_back(n, buf);
        if (!any || mpfr_cmp(root.raw(), best_lo.raw()) < 0) {
            mpfr_set(best_lo.raw(), root.raw(), MPFR_RNDN);
            out.min_root = buf;
        }
        if (!any || mpfr_cmp(root.raw(), best_hi.raw()) > 0) {
            mpfr_set(best_hi.raw(), root.raw(), MPFR_RNDN);
            out.max_root = buf;
        }
        any = true;
    }
    return out;
}

std::string to_csv(const ExponentWindowEstimate& w) {
    std::ostringstream out;
    out << "n,root\n";
    for (const auto& [n, root] : w.roots) out << n << "," << root << "\n";
    return out.str();
}

}  // namespace starcodim

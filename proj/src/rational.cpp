#include "starcodim/rational.hpp"

#include <algorithm>

namespace starcodim {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) {
    return r.get_str();
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    if (k > n) return 0;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer int_pow(const Integer& base, unsigned long exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Integer factorial(unsigned long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

void normalize(SparseVec& v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first) {
            out.back().second += e.second;
        } else {
            out.push_back(std::move(e));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == 0; }),
              out.end());
    v = std::move(out);
}

SparseVec to_sparse(const std::vector<Rational>& dense) {
    SparseVec out;
    for (int i = 0; i < static_cast<int>(dense.size()); ++i)
        if (dense[i] != 0) out.emplace_back(i, dense[i]);
    return out;
}

std::vector<Rational> to_dense(const SparseVec& v, int dim) {
    std::vector<Rational> out(dim, Rational(0));
    for (const auto& [i, c] : v) out[i] = c;
    return out;
}

}  // namespace starcodim

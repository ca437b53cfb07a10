#include "starcodim/linalg.hpp"

namespace starcodim {

std::vector<int> rref(DenseMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m[r], m[pr]);
        Rational inv = 1 / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank_dense(DenseMatrix m) {
    return static_cast<int>(rref(m).size());
}

std::optional<DenseMatrix> invert(const DenseMatrix& m) {
    const int n = static_cast<int>(m.size());
    DenseMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots[n - 1] != n - 1) return std::nullopt;
    DenseMatrix out(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
    return out;
}

std::vector<Rational> mat_vec(const DenseMatrix& m, const std::vector<Rational>& v) {
    const int rows = static_cast<int>(m.size());
    std::vector<Rational> out(rows, Rational(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < static_cast<int>(v.size()); ++j)
            if (m[i][j] != 0 && v[j] != 0) out[i] += m[i][j] * v[j];
    return out;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
    const int n = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int m = k ? static_cast<int>(b[0].size()) : 0;
    DenseMatrix out(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < k; ++t)
            if (a[i][t] != 0)
                for (int j = 0; j < m; ++j)
                    if (b[t][j] != 0) out[i][j] += a[i][t] * b[t][j];
    return out;
}

DenseMatrix identity_matrix(int n) {
    DenseMatrix out(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

}  // namespace starcodim

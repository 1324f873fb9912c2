#include "veerpoly/smith.hpp"

#include <utility>

namespace veerpoly {

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
    std::size_t r = a.size(), c = b.empty() ? 0 : b[0].size();
    IntMatrix m(r, std::vector<mpz_class>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < c; ++j) m[i][j] += a[i][k] * b[k][j];
        }
    return m;
}

namespace {

struct Work {
    IntMatrix a, u, uinv, v;
    std::size_t m, n;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        std::swap(u[i], u[j]);
        for (std::size_t k = 0; k < m; ++k) std::swap(uinv[k][i], uinv[k][j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m; ++k) std::swap(a[k][i], a[k][j]);
        for (std::size_t k = 0; k < n; ++k) std::swap(v[k][i], v[k][j]);
    }
    // row i += q * row j
    void add_row(std::size_t i, std::size_t j, const mpz_class& q) {
        for (std::size_t k = 0; k < n; ++k) a[i][k] += q * a[j][k];
        for (std::size_t k = 0; k < m; ++k) u[i][k] += q * u[j][k];
        for (std::size_t k = 0; k < m; ++k) uinv[k][j] -= q * uinv[k][i];
    }
    // col i += q * col j
    void add_col(std::size_t i, std::size_t j, const mpz_class& q) {
        for (std::size_t k = 0; k < m; ++k) a[k][i] += q * a[k][j];
        for (std::size_t k = 0; k < n; ++k) v[k][i] += q * v[k][j];
    }
    void negate_row(std::size_t i) {
        for (auto& x : a[i]) x = -x;
        for (auto& x : u[i]) x = -x;
        for (std::size_t k = 0; k < m; ++k) uinv[k][i] = -uinv[k][i];
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& d, std::size_t rows, std::size_t cols) {
    Work w{d, identity_matrix(rows), identity_matrix(rows), identity_matrix(cols), rows, cols};
    std::size_t t = 0;
    while (t < rows && t < cols) {
        bool have = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (w.a[i][j] == 0) continue;
                if (!have || abs(w.a[i][j]) < abs(w.a[pi][pj])) {
                    have = true;
                    pi = i;
                    pj = j;
                }
            }
        if (!have) break;
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (w.a[i][t] == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
            w.add_row(i, t, -q);
            if (w.a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (w.a[t][j] == 0) continue;
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
            w.add_col(j, t, -q);
            if (w.a[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (!mpz_divisible_p(w.a[i][j].get_mpz_t(), w.a[t][t].get_mpz_t())) {
                    w.add_row(t, i, 1);
                    divides = false;
                    break;
                }
        if (!divides) continue;
        if (w.a[t][t] < 0) w.negate_row(t);
        ++t;
    }
    SmithForm out;
    out.rank = int(t);
    for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(w.a[i][i]);
    out.S = std::move(w.a);
    out.U = std::move(w.u);
    out.Uinv = std::move(w.uinv);
    out.V = std::move(w.v);
    return out;
}

}  // namespace veerpoly

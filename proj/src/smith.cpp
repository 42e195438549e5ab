#include "essdim/smith.hpp"

#include <utility>

namespace essdim {

ZMatrix zmatrix(std::size_t rows, std::size_t cols) {
  return ZMatrix(rows, std::vector<mpz_class>(cols, 0));
}

ZMatrix zidentity(std::size_t n) {
  ZMatrix m = zmatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMatrix zmul(const ZMatrix& a, const ZMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  ZMatrix c = zmatrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

std::vector<mpz_class> SmithForm::diagonal() const {
  std::vector<mpz_class> d;
  std::size_t n = std::min(D.size(), D.empty() ? 0 : D[0].size());
  for (std::size_t i = 0; i < n; ++i) d.push_back(D[i][i]);
  return d;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

struct Smith {
  ZMatrix a, u, v, vinv;
  std::size_t m, n;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
  }
  // row_i -= q * row_j
  void row_sub(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t c = 0; c < n; ++c) a[i][c] -= q * a[j][c];
    for (std::size_t c = 0; c < m; ++c) u[i][c] -= q * u[j][c];
  }
  // col_i -= q * col_j
  void col_sub(std::size_t i, std::size_t j, const mpz_class& q) {
    for (std::size_t r = 0; r < m; ++r) a[r][i] -= q * a[r][j];
    for (std::size_t r = 0; r < n; ++r) v[r][i] -= q * v[r][j];
    for (std::size_t c = 0; c < n; ++c) vinv[j][c] += q * vinv[i][c];
  }

  void run() {
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!pivot_min(t)) break;
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (a[i][t] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          row_sub(i, t, q);
          if (a[i][t] != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[t][j] == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          col_sub(j, t, q);
          if (a[t][j] != 0) dirty = true;
        }
        if (dirty) {
          pivot_line(t);
          continue;
        }
        // divisibility: fold an offending row into row t
        bool fixed = true;
        for (std::size_t i = t + 1; i < m && fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a[i][j] % a[t][t] != 0) {
              row_sub(t, i, -1);
              fixed = false;
              break;
            }
        if (fixed) break;
      }
      if (a[t][t] < 0) {
        for (auto& x : a[t]) x = -x;
        for (auto& x : u[t]) x = -x;
      }
    }
  }

  // Move the least nonzero |entry| of the lower-right block to (t,t).
  bool pivot_min(std::size_t t) {
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (bi == m || abs(a[i][j]) < abs(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == m) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Least nonzero |entry| among row t and column t moved to (t,t).
  void pivot_line(std::size_t t) {
    std::size_t bi = t, bj = t;
    mpz_class best = abs(a[t][t]);
    for (std::size_t i = t + 1; i < m; ++i)
      if (a[i][t] != 0 && abs(a[i][t]) < best) {
        best = abs(a[i][t]);
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < n; ++j)
      if (a[t][j] != 0 && abs(a[t][j]) < best) {
        best = abs(a[t][j]);
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }
};

}  // namespace

SmithForm smith_normal_form(const ZMatrix& a) {
  Smith s;
  s.m = a.size();
  s.n = s.m ? a[0].size() : 0;
  s.a = a;
  s.u = zidentity(s.m);
  s.v = zidentity(s.n);
  s.vinv = zidentity(s.n);
  s.run();
  return SmithForm{std::move(s.a), std::move(s.u), std::move(s.v), std::move(s.vinv)};
}

std::size_t zrank(const ZMatrix& a) {
  // fraction-free (Bareiss) elimination
  ZMatrix m = a;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace essdim

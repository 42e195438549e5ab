#pragma once

#include <gmpxx.h>

#include <vector>

namespace essdim {

using ZMatrix = std::vector<std::vector<mpz_class>>;

ZMatrix zmatrix(std::size_t rows, std::size_t cols);
ZMatrix zidentity(std::size_t n);
ZMatrix zmul(const ZMatrix& a, const ZMatrix& b);

// Smith normal form U * A * V = D with U, V unimodular, D diagonal with
// nonnegative entries d_1 | d_2 | ... (zeros last). Vinv = V^{-1}.
struct SmithForm {
  ZMatrix D, U, V, Vinv;
  std::vector<mpz_class> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const ZMatrix& a);

// Rank over Q.
std::size_t zrank(const ZMatrix& a);

}  // namespace essdim

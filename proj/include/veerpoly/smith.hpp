#pragma once

#include <vector>

#include <gmpxx.h>

namespace veerpoly {

using IntMatrix = std::vector<std::vector<mpz_class>>;

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t inner);

// U * D * V = S with S diagonal, d_1 | d_2 | ... , d_i >= 0. Pivot: least nonzero
// absolute value, ties broken by row-major position.
struct SmithForm {
    IntMatrix S, U, Uinv, V;
    std::vector<mpz_class> diagonal;  // nonzero entries
    int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& d, std::size_t rows, std::size_t cols);

}  // namespace veerpoly

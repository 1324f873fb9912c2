#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace veerpoly {

inline constexpr int kMaxVars = 8;

// Dense exponent vector; entries at index >= nvars stay zero.
using Exponent = std::array<std::int32_t, kMaxVars>;

struct Term {
    Exponent exp{};
    mpz_class coef;
};

// Element of Z[t_1^±1, ..., t_b^±1]. Terms are kept sorted ascending in lex order,
// with no zero coefficients.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(int nvars);

    static LaurentPoly constant(int nvars, const mpz_class& c);
    static LaurentPoly monomial(int nvars, const Exponent& e, const mpz_class& c = 1);
    static LaurentPoly monomial(int nvars, const std::vector<long>& e, const mpz_class& c = 1);
    // Builds from arbitrary term list (merged, zeros dropped).
    static LaurentPoly from_terms(int nvars, std::vector<Term> terms);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const;
    mpz_class coefficient(const Exponent& e) const;
    Exponent min_exponent() const;  // componentwise
    Exponent max_exponent() const;  // componentwise
    const Term& lex_leading() const { return terms_.back(); }
    const Term& lex_trailing() const { return terms_.front(); }

    LaurentPoly shifted(const Exponent& by) const;
    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly scaled(const mpz_class& c) const;

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    // Graded-lex descending rendering with variables a, b, c, ... or custom names.
    std::string str() const;
    std::string str(const std::vector<std::string>& names) const;

private:
    void check_compatible(const LaurentPoly& o) const;
    int nvars_ = 0;
    std::vector<Term> terms_;
};

LaurentPoly normalize_unit(const LaurentPoly& p);
bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b);

// gcd up to units, returned canonical.
LaurentPoly gcd_laurent(const LaurentPoly& p, const LaurentPoly& q);

// Throws DivisionByZero or Inexact.
LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& q);
std::optional<LaurentPoly> try_div_exact(const LaurentPoly& p, const LaurentPoly& q);

// Univariate result (nvars = 1).
LaurentPoly specialize(const LaurentPoly& p, const std::vector<long>& alpha);

// Integral linear change of variables: t_i -> prod_j t_j^{m[j][i]}, i.e. the exponent
// vector e maps to m * e. m has size new_nvars x nvars.
LaurentPoly substitute(const LaurentPoly& p, const std::vector<std::vector<long>>& m);

// Accepts the rendering produced by str(); variable names default to a, b, c, ...
LaurentPoly parse_laurent(std::string_view text, int nvars,
                          const std::vector<std::string>& names = {});

std::vector<std::string> default_var_names(int nvars);

class LaurentMatrix {
public:
    LaurentMatrix() = default;
    LaurentMatrix(std::size_t rows, std::size_t cols, int nvars);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int nvars() const { return nvars_; }

    LaurentPoly& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const LaurentPoly& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    LaurentMatrix operator*(const LaurentMatrix& o) const;
    friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b);

    LaurentMatrix select_columns(const std::vector<std::size_t>& cols) const;
    static LaurentMatrix identity(std::size_t n, int nvars);

private:
    std::size_t rows_ = 0, cols_ = 0;
    int nvars_ = 0;
    std::vector<LaurentPoly> data_;
};

// Dispatches on size: cofactor expansion up to kCofactorThreshold, Bareiss above.
inline constexpr std::size_t kCofactorThreshold = 10;
LaurentPoly det_laurent(const LaurentMatrix& m);
LaurentPoly det_cofactor(const LaurentMatrix& m);
LaurentPoly det_bareiss(const LaurentMatrix& m);

}  // namespace veerpoly

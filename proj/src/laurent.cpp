#include "veerpoly/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

#include "veerpoly/error.hpp"

namespace veerpoly {

namespace {

void merge_sorted(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coef += t.coef;
        else {
            if (!out.empty() && out.back().coef == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coef == 0) out.pop_back();
    terms = std::move(out);
}

Exponent sub(const Exponent& a, const Exponent& b) {
    Exponent r{};
    for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] - b[i];
    return r;
}

Exponent add(const Exponent& a, const Exponent& b) {
    Exponent r{};
    for (int i = 0; i < kMaxVars; ++i) r[i] = a[i] + b[i];
    return r;
}

long total_degree(const Exponent& e) {
    long s = 0;
    for (auto v : e) s += v;
    return s;
}

}  // namespace

LaurentPoly::LaurentPoly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars)
        throw Error(ErrorCode::DimensionBudgetExceeded, "laurent", "variable count " + std::to_string(nvars));
}

LaurentPoly LaurentPoly::constant(int nvars, const mpz_class& c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_.push_back(Term{Exponent{}, c});
    return p;
}

LaurentPoly LaurentPoly::monomial(int nvars, const Exponent& e, const mpz_class& c) {
    LaurentPoly p(nvars);
    if (c != 0) p.terms_.push_back(Term{e, c});
    return p;
}

LaurentPoly LaurentPoly::monomial(int nvars, const std::vector<long>& e, const mpz_class& c) {
    Exponent ex{};
    for (std::size_t i = 0; i < e.size() && i < std::size_t(kMaxVars); ++i) ex[i] = std::int32_t(e[i]);
    return monomial(nvars, ex, c);
}

LaurentPoly LaurentPoly::from_terms(int nvars, std::vector<Term> terms) {
    LaurentPoly p(nvars);
    merge_sorted(terms);
    p.terms_ = std::move(terms);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponent{});
}

mpz_class LaurentPoly::coefficient(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.exp < x; });
    if (it != terms_.end() && it->exp == e) return it->coef;
    return 0;
}

Exponent LaurentPoly::min_exponent() const {
    Exponent m{};
    if (terms_.empty()) return m;
    m = terms_[0].exp;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], t.exp[i]);
    return m;
}

Exponent LaurentPoly::max_exponent() const {
    Exponent m{};
    if (terms_.empty()) return m;
    m = terms_[0].exp;
    for (const auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i) m[i] = std::max(m[i], t.exp[i]);
    return m;
}

LaurentPoly LaurentPoly::shifted(const Exponent& by) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.exp = add(t.exp, by);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

LaurentPoly LaurentPoly::scaled(const mpz_class& c) const {
    if (c == 0) return LaurentPoly(nvars_);
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
    if (nvars_ != o.nvars_)
        throw Error(ErrorCode::InternalMismatch, "laurent", "variable count mismatch");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_compatible(o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exp < o.terms_[j].exp)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].exp < terms_[i].exp) {
            out.push_back(o.terms_[j++]);
        } else {
            mpz_class c = terms_[i].coef + o.terms_[j].coef;
            if (c != 0) out.push_back(Term{terms_[i].exp, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.terms_.size() == 1) {
        r = a.shifted(b.terms_[0].exp);
        for (auto& t : r.terms_) t.coef *= b.terms_[0].coef;
        return r;
    }
    if (a.terms_.size() == 1) return b * a;
    std::vector<Term> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) prod.push_back(Term{add(x.exp, y.exp), x.coef * y.coef});
    merge_sorted(prod);
    r.terms_ = std::move(prod);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

std::vector<std::string> default_var_names(int nvars) {
    std::vector<std::string> names;
    for (int i = 0; i < nvars; ++i) names.emplace_back(1, char('a' + i));
    return names;
}

std::string LaurentPoly::str() const { return str(default_var_names(nvars_)); }

std::string LaurentPoly::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::vector<const Term*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* x, const Term* y) {
        long dx = total_degree(x->exp), dy = total_degree(y->exp);
        if (dx != dy) return dx > dy;
        return y->exp < x->exp;
    });
    std::ostringstream os;
    bool first = true;
    for (const Term* t : order) {
        std::string mono;
        for (int i = 0; i < nvars_; ++i) {
            if (t->exp[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names.at(i);
            if (t->exp[i] != 1) mono += "^" + std::to_string(t->exp[i]);
        }
        bool neg = t->coef < 0;
        mpz_class mag = abs(t->coef);
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (mono.empty())
            os << mag.get_str();
        else if (mag == 1)
            os << mono;
        else
            os << mag.get_str() << "*" << mono;
    }
    return os.str();
}

LaurentPoly normalize_unit(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    Exponent m = p.min_exponent();
    for (auto& v : m) v = -v;
    LaurentPoly r = p.shifted(m);
    if (r.lex_leading().coef < 0) r = -r;
    return r;
}

bool equal_up_to_unit(const LaurentPoly& a, const LaurentPoly& b) {
    return normalize_unit(a) == normalize_unit(b);
}

std::optional<LaurentPoly> try_div_exact(const LaurentPoly& p, const LaurentPoly& q) {
    if (q.is_zero()) throw Error(ErrorCode::DivisionByZero, "div_exact");
    int nv = p.nvars();
    if (p.is_zero()) return LaurentPoly(nv);
    if (q.is_monomial()) {
        const Term& t = q.lex_leading();
        LaurentPoly r(nv);
        std::vector<Term> out;
        for (const auto& x : p.terms()) {
            if (!mpz_divisible_p(x.coef.get_mpz_t(), t.coef.get_mpz_t())) return std::nullopt;
            out.push_back(Term{sub(x.exp, t.exp), x.coef / t.coef});
        }
        return LaurentPoly::from_terms(nv, std::move(out));
    }
    // Newton polytope of the quotient lies in [pmin - qmin, pmax - qmax].
    Exponent lo = sub(p.min_exponent(), q.min_exponent());
    Exponent hi = sub(p.max_exponent(), q.max_exponent());
    for (int i = 0; i < kMaxVars; ++i)
        if (lo[i] > hi[i]) return std::nullopt;
    const Term& lq = q.lex_leading();
    LaurentPoly rem = p;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
        const Term& lr = rem.lex_leading();
        Exponent e = sub(lr.exp, lq.exp);
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] < lo[i] || e[i] > hi[i]) return std::nullopt;
        if (!mpz_divisible_p(lr.coef.get_mpz_t(), lq.coef.get_mpz_t())) return std::nullopt;
        mpz_class c = lr.coef / lq.coef;
        quot.push_back(Term{e, c});
        rem -= q * LaurentPoly::monomial(nv, e, c);
    }
    return LaurentPoly::from_terms(nv, std::move(quot));
}

LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& q) {
    auto r = try_div_exact(p, q);
    if (!r) throw Error(ErrorCode::Inexact, "div_exact", p.str() + " / " + q.str());
    return *r;
}

namespace {

// Polynomials below have nonnegative exponents; variable v is the main variable.

int deg_in(const LaurentPoly& p, int v) {
    int d = 0;
    for (const auto& t : p.terms()) d = std::max(d, int(t.exp[v]));
    return d;
}

std::map<int, LaurentPoly> coeffs_in(const LaurentPoly& p, int v) {
    std::map<int, std::vector<Term>> buckets;
    for (const auto& t : p.terms()) {
        Term u = t;
        u.exp[v] = 0;
        buckets[t.exp[v]].push_back(std::move(u));
    }
    std::map<int, LaurentPoly> out;
    for (auto& [k, ts] : buckets) out.emplace(k, LaurentPoly::from_terms(p.nvars(), std::move(ts)));
    return out;
}

LaurentPoly lead_coeff_in(const LaurentPoly& p, int v, int d) {
    std::vector<Term> ts;
    for (const auto& t : p.terms())
        if (t.exp[v] == d) {
            Term u = t;
            u.exp[v] = 0;
            ts.push_back(std::move(u));
        }
    return LaurentPoly::from_terms(p.nvars(), std::move(ts));
}

bool is_unit_constant(const LaurentPoly& p) {
    return p.is_constant() && !p.is_zero() && abs(p.terms()[0].coef) == 1;
}

LaurentPoly gcd_rec(const LaurentPoly& p, const LaurentPoly& q, int v);

LaurentPoly content_in(const LaurentPoly& p, int v) {
    int nv = p.nvars();
    LaurentPoly c(nv);
    for (auto& [k, cf] : coeffs_in(p, v)) {
        c = c.is_zero() ? cf : gcd_rec(c, cf, v + 1);
        if (is_unit_constant(c)) break;
    }
    return c;
}

LaurentPoly prem_in(LaurentPoly a, const LaurentPoly& b, int v) {
    int db = deg_in(b, v);
    LaurentPoly lc = lead_coeff_in(b, v, db);
    while (!a.is_zero() && deg_in(a, v) >= db) {
        int d = deg_in(a, v);
        LaurentPoly la = lead_coeff_in(a, v, d);
        Exponent sh{};
        sh[v] = d - db;
        a = lc * a - la * b.shifted(sh);
    }
    return a;
}

LaurentPoly primitive_in(const LaurentPoly& p, int v) {
    if (p.is_zero()) return p;
    return div_exact(p, content_in(p, v));
}

LaurentPoly gcd_rec(const LaurentPoly& p, const LaurentPoly& q, int v) {
    int nv = p.nvars();
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    if (v >= nv) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), p.terms()[0].coef.get_mpz_t(), q.terms()[0].coef.get_mpz_t());
        return LaurentPoly::constant(nv, g);
    }
    int dp = deg_in(p, v), dq = deg_in(q, v);
    if (dp == 0 && dq == 0) return gcd_rec(p, q, v + 1);
    LaurentPoly cp = content_in(p, v), cq = content_in(q, v);
    LaurentPoly c = gcd_rec(cp, cq, v + 1);
    LaurentPoly a = div_exact(p, cp), b = div_exact(q, cq);
    if (deg_in(a, v) < deg_in(b, v)) std::swap(a, b);
    while (!b.is_zero()) {
        if (deg_in(b, v) == 0) {
            a = LaurentPoly::constant(nv, 1);
            break;
        }
        LaurentPoly r = prem_in(a, b, v);
        a = std::move(b);
        b = primitive_in(r, v);
    }
    return c * primitive_in(a, v);
}

LaurentPoly strip_monomial(const LaurentPoly& p) {
    Exponent m = p.min_exponent();
    for (auto& x : m) x = -x;
    return p.shifted(m);
}

}  // namespace

LaurentPoly gcd_laurent(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero()) return normalize_unit(q);
    if (q.is_zero()) return normalize_unit(p);
    LaurentPoly a = strip_monomial(p), b = strip_monomial(q);
    if (try_div_exact(a, b)) return normalize_unit(b);
    if (try_div_exact(b, a)) return normalize_unit(a);
    return normalize_unit(gcd_rec(a, b, 0));
}

LaurentPoly specialize(const LaurentPoly& p, const std::vector<long>& alpha) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        long e = 0;
        for (int i = 0; i < p.nvars(); ++i) e += long(t.exp[i]) * (i < int(alpha.size()) ? alpha[i] : 0);
        Exponent ex{};
        ex[0] = std::int32_t(e);
        out.push_back(Term{ex, t.coef});
    }
    return LaurentPoly::from_terms(1, std::move(out));
}

LaurentPoly substitute(const LaurentPoly& p, const std::vector<std::vector<long>>& m) {
    int nn = int(m.size());
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        Exponent ex{};
        for (int i = 0; i < nn; ++i) {
            long s = 0;
            for (int j = 0; j < p.nvars(); ++j) s += m[i][j] * long(t.exp[j]);
            ex[i] = std::int32_t(s);
        }
        out.push_back(Term{ex, t.coef});
    }
    return LaurentPoly::from_terms(nn, std::move(out));
}

LaurentPoly parse_laurent(std::string_view text, int nvars, const std::vector<std::string>& names_in) {
    auto names = names_in.empty() ? default_var_names(nvars) : names_in;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    auto fail = [&](std::size_t pos) {
        throw Error(ErrorCode::SyntaxError, "column " + std::to_string(pos + 1), "bad polynomial '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    auto read_int = [&](mpz_class& out) {
        std::size_t st = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == st || !std::isdigit(static_cast<unsigned char>(s[i - 1]))) fail(st);
        out = mpz_class(s.substr(st, i - st));
    };
    std::vector<Term> terms;
    if (s.empty()) fail(0);
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!terms.empty()) {
            fail(i);
        }
        Term t;
        t.coef = sign;
        bool any = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            mpz_class c;
            read_int(c);
            t.coef *= c;
            any = true;
            if (i < s.size() && s[i] == '*') ++i; else goto done;
        }
        while (true) {
            int var = -1;
            std::size_t best = 0;
            for (int k = 0; k < nvars; ++k)
                if (s.compare(i, names[k].size(), names[k]) == 0 && names[k].size() > best) {
                    var = k;
                    best = names[k].size();
                }
            if (var < 0) fail(i);
            i += best;
            long e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                mpz_class x;
                read_int(x);
                e = x.get_si();
            }
            t.exp[var] += std::int32_t(e);
            any = true;
            if (i < s.size() && s[i] == '*') ++i; else break;
        }
    done:
        if (!any) fail(i);
        terms.push_back(std::move(t));
    }
    return LaurentPoly::from_terms(nvars, std::move(terms));
}

LaurentMatrix::LaurentMatrix(std::size_t rows, std::size_t cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, LaurentPoly(nvars)) {}

LaurentMatrix LaurentMatrix::identity(std::size_t n, int nvars) {
    LaurentMatrix m(n, n, nvars);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(nvars, 1);
    return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::InternalMismatch, "matrix product", "shape mismatch");
    LaurentMatrix r(rows_, o.cols_, nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const auto& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const auto& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

LaurentMatrix LaurentMatrix::select_columns(const std::vector<std::size_t>& cols) const {
    LaurentMatrix r(rows_, cols.size(), nvars_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) r.at(i, j) = at(i, cols[j]);
    return r;
}

LaurentPoly det_cofactor(const LaurentMatrix& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InternalMismatch, "det", "matrix not square");
    int nv = m.nvars();
    if (n == 0) return LaurentPoly::constant(nv, 1);
    if (n > 20) throw Error(ErrorCode::DimensionBudgetExceeded, "det_cofactor", "size " + std::to_string(n));
    // dp[mask]: signed sum over assignments of the first popcount(mask) columns to the rows in mask.
    std::vector<LaurentPoly> dp(std::size_t(1) << n, LaurentPoly(nv));
    std::vector<char> live(dp.size(), 0);
    dp[0] = LaurentPoly::constant(nv, 1);
    live[0] = 1;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
        if (!live[mask] || dp[mask].is_zero()) continue;
        std::size_t j = std::size_t(__builtin_popcountll(mask));
        if (j == n) continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t(1) << i)) continue;
            const auto& a = m.at(i, j);
            if (a.is_zero()) continue;
            std::size_t above = mask >> (i + 1);
            int inv = __builtin_popcountll(above);
            LaurentPoly term = dp[mask] * a;
            std::size_t nm = mask | (std::size_t(1) << i);
            if (inv % 2) dp[nm] -= term; else dp[nm] += term;
            live[nm] = 1;
        }
        if (mask != 0) dp[mask] = LaurentPoly(nv);
    }
    return dp.back();
}

LaurentPoly det_bareiss(const LaurentMatrix& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw Error(ErrorCode::InternalMismatch, "det", "matrix not square");
    int nv = m.nvars();
    if (n == 0) return LaurentPoly::constant(nv, 1);
    std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    int sign = 1;
    LaurentPoly prev = LaurentPoly::constant(nv, 1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = n;
        for (std::size_t i = k; i < n; ++i)
            if (!a[i][k].is_zero() && (piv == n || a[i][k].size() < a[piv][k].size())) piv = i;
        if (piv == n) return LaurentPoly(nv);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                LaurentPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = div_exact(num, prev);
            }
            a[i][k] = LaurentPoly(nv);
        }
        prev = a[k][k];
    }
    return sign < 0 ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

LaurentPoly det_laurent(const LaurentMatrix& m) {
    if (m.rows() <= kCofactorThreshold) return det_cofactor(m);
    return det_bareiss(m);
}

}  // namespace veerpoly

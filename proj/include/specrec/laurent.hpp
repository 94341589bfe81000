#pragma once

// Truncated Laurent series at a point of CP^1. A series stores the exact
// coefficients of t^e for min_exp <= e < trunc, where t = z - center (or
// t = w = 1/z at infinity); exponents >= trunc are unknown. Every operation
// returns the largest truncation it can guarantee. Nothing is ever padded
// with zeros implicitly.

#include "specrec/ratfun.hpp"
#include "specrec/scalar.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrec {

/// A coefficient outside the known window was requested.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class LaurentSeries {
  public:
    static constexpr int kNoCap = std::numeric_limits<int>::max() / 4;

    /// Leading zero coefficients are stripped, so min_exp() is the exact
    /// valuation unless the series is zero to its truncation.
    LaurentSeries(Point center, int min_exp, std::vector<Scalar> coeffs)
        : center_(std::move(center)), min_exp_(min_exp), coeffs_(std::move(coeffs)) {
        normalize();
    }

    static LaurentSeries zero(Point center, int trunc) { return LaurentSeries(std::move(center), trunc, {}); }
    static LaurentSeries monomial(Point center, int exponent, const Scalar& c, int trunc) {
        if (trunc <= exponent) return zero(std::move(center), trunc);
        std::vector<Scalar> v(static_cast<std::size_t>(trunc - exponent));
        v.front() = c;
        return LaurentSeries(std::move(center), exponent, std::move(v));
    }

    const Point& center() const { return center_; }
    int min_exp() const { return min_exp_; }
    int trunc() const { return min_exp_ + static_cast<int>(coeffs_.size()); }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    /// True if no nonzero coefficient is known.
    bool is_zero() const { return coeffs_.empty(); }

    Scalar coeff(int e) const {
        if (e >= trunc())
            throw TruncationError("coefficient t^" + std::to_string(e) + " requested beyond truncation " +
                                  std::to_string(trunc()));
        if (e < min_exp_) return Scalar(0);
        return coeffs_[static_cast<std::size_t>(e - min_exp_)];
    }
    /// Unchecked access for exponents known to lie in the window.
    const Scalar& operator[](int e) const { return coeffs_[static_cast<std::size_t>(e - min_exp_)]; }

    LaurentSeries truncated(int new_trunc) const {
        if (new_trunc >= trunc()) return *this;
        if (new_trunc <= min_exp_) return zero(center_, new_trunc);
        return LaurentSeries(center_, min_exp_,
                             std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + (new_trunc - min_exp_)));
    }

    /// Reinterprets the stored coefficients as an exact Laurent polynomial
    /// and extends it with zeros up to new_trunc. Only valid for objects that
    /// really are polynomials, such as Newton iterates.
    LaurentSeries as_polynomial_to(int new_trunc) const {
        if (coeffs_.empty()) return zero(center_, new_trunc);
        std::vector<Scalar> v = coeffs_;
        if (new_trunc > trunc()) v.resize(static_cast<std::size_t>(new_trunc - min_exp_));
        return LaurentSeries(center_, min_exp_, std::move(v)).truncated(new_trunc);
    }

    /// Same center, same known coefficients and same truncation.
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.center_ == b.center_ && a.trunc() == b.trunc() && (a.is_zero() ? b.is_zero() : a.min_exp_ == b.min_exp_ && a.coeffs_ == b.coeffs_);
    }

  private:
    void normalize() {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && sgn(coeffs_[lead]) == 0) ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            min_exp_ += static_cast<int>(lead);
        }
    }

    Point center_;
    int min_exp_;
    std::vector<Scalar> coeffs_;
};

namespace detail {
inline void require_same_center(const LaurentSeries& a, const LaurentSeries& b) {
    if (!(a.center() == b.center())) throw std::invalid_argument("series arithmetic across different centers");
}
} // namespace detail

inline LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    detail::require_same_center(a, b);
    const int t = std::min(a.trunc(), b.trunc());
    const int lo = std::min(a.min_exp(), b.min_exp());
    if (lo >= t) return LaurentSeries::zero(a.center(), t);
    std::vector<Scalar> v(static_cast<std::size_t>(t - lo));
    for (int e = std::max(lo, a.min_exp()); e < t; ++e) v[static_cast<std::size_t>(e - lo)] += a[e];
    for (int e = std::max(lo, b.min_exp()); e < t; ++e) v[static_cast<std::size_t>(e - lo)] += b[e];
    return LaurentSeries(a.center(), lo, std::move(v));
}

inline LaurentSeries operator-(const LaurentSeries& a) {
    std::vector<Scalar> v = a.coeffs();
    for (auto& c : v) c = -c;
    return LaurentSeries(a.center(), a.min_exp(), std::move(v));
}
inline LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

inline LaurentSeries operator*(const LaurentSeries& a, const Scalar& c) {
    if (sgn(c) == 0) return LaurentSeries::zero(a.center(), a.trunc());
    std::vector<Scalar> v = a.coeffs();
    for (auto& x : v) x *= c;
    return LaurentSeries(a.center(), a.min_exp(), std::move(v));
}
inline LaurentSeries operator*(const Scalar& c, const LaurentSeries& a) { return a * c; }

/// In-place acc += c * a, keeping acc's window when a's is larger.
inline void add_scaled(LaurentSeries& acc, const LaurentSeries& a, const Scalar& c) { acc = acc + a * c; }

/// Adds an exact constant without touching the truncation.
inline LaurentSeries add_constant(const LaurentSeries& a, const Scalar& c) {
    if (a.trunc() <= 0 || sgn(c) == 0) return a;
    return a + LaurentSeries::monomial(a.center(), 0, c, a.trunc());
}

/// Product, computing only exponents below `cap`.
inline LaurentSeries mul(const LaurentSeries& a, const LaurentSeries& b, int cap = LaurentSeries::kNoCap) {
    detail::require_same_center(a, b);
    const int lo = a.min_exp() + b.min_exp();
    const int t = std::min({a.trunc() + b.min_exp(), b.trunc() + a.min_exp(), cap});
    if (a.is_zero() || b.is_zero() || lo >= t) return LaurentSeries::zero(a.center(), t);
    std::vector<Scalar> v(static_cast<std::size_t>(t - lo));
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    const std::size_t n = v.size();
    mpq_t tmp;
    mpq_init(tmp);
    for (std::size_t i = 0; i < ac.size() && i < n; ++i) {
        if (sgn(ac[i]) == 0) continue;
        const std::size_t jmax = std::min(bc.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (sgn(bc[j]) == 0) continue;
            mpq_mul(tmp, ac[i].get_mpq_t(), bc[j].get_mpq_t());
            mpq_add(v[i + j].get_mpq_t(), v[i + j].get_mpq_t(), tmp);
        }
    }
    mpq_clear(tmp);
    return LaurentSeries(a.center(), lo, std::move(v));
}
inline LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return mul(a, b); }

/// Multiplicative inverse. Throws if the series is zero to its truncation.
inline LaurentSeries inverse(const LaurentSeries& a) {
    if (a.is_zero())
        throw std::domain_error("division by a series indistinguishable from zero at truncation " +
                                std::to_string(a.trunc()));
    const auto& ac = a.coeffs();
    const std::size_t n = ac.size();
    std::vector<Scalar> b(n);
    const Scalar inv0 = 1 / ac[0];
    b[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Scalar s(0);
        for (std::size_t i = 1; i <= k; ++i)
            if (sgn(ac[i]) != 0) s += ac[i] * b[k - i];
        b[k] = -s * inv0;
    }
    return LaurentSeries(a.center(), -a.min_exp(), std::move(b));
}

inline LaurentSeries div(const LaurentSeries& a, const LaurentSeries& b, int cap = LaurentSeries::kNoCap) {
    return mul(a, inverse(b), cap);
}
inline LaurentSeries operator/(const LaurentSeries& a, const LaurentSeries& b) { return div(a, b); }

/// Integer power (negative exponents go through the inverse).
inline LaurentSeries pow(const LaurentSeries& a, int k, int cap = LaurentSeries::kNoCap) {
    if (k < 0) return pow(inverse(a), -k, cap);
    if (k == 0) return LaurentSeries::monomial(a.center(), 0, Scalar(1), cap == LaurentSeries::kNoCap ? 1 : cap);
    LaurentSeries r = a.truncated(cap);
    for (int i = 1; i < k; ++i) r = mul(r, a, cap);
    return r;
}

/// Termwise derivative with respect to the local variable.
inline LaurentSeries derivative(const LaurentSeries& a) {
    std::vector<Scalar> v(a.coeffs().size());
    for (int e = a.min_exp(); e < a.trunc(); ++e) v[static_cast<std::size_t>(e - a.min_exp())] = a[e] * e;
    if (v.empty()) return LaurentSeries::zero(a.center(), a.trunc() - 1);
    return LaurentSeries(a.center(), a.min_exp() - 1, std::move(v));
}

/// Termwise antiderivative with zero constant term; requires a vanishing
/// t^-1 coefficient.
inline LaurentSeries integrate(const LaurentSeries& a) {
    if (sgn(a.coeff(-1)) != 0) throw std::domain_error("integrating a series with a nonzero t^-1 term");
    const int lo = std::min(a.min_exp() + 1, a.trunc() + 1);
    std::vector<Scalar> v(static_cast<std::size_t>(a.trunc() + 1 - lo));
    for (int e = a.min_exp(); e < a.trunc(); ++e)
        if (e != -1) v[static_cast<std::size_t>(e + 1 - lo)] = a[e] / (e + 1);
    return LaurentSeries(a.center(), lo, std::move(v));
}

/// Coefficient of t^-1.
inline Scalar series_residue(const LaurentSeries& s) {
    if (s.trunc() <= -1) throw TruncationError("residue exponent outside the known window");
    return s.coeff(-1);
}

/// Coefficient of t^-1 in a*b without forming the product.
inline Scalar residue_of_product(const LaurentSeries& a, const LaurentSeries& b) {
    detail::require_same_center(a, b);
    if (std::min(a.trunc() + b.min_exp(), b.trunc() + a.min_exp()) <= -1)
        throw TruncationError("product residue outside the known window");
    Scalar r(0);
    mpq_t tmp;
    mpq_init(tmp);
    const int hi = -1 - b.min_exp();
    for (int e = a.min_exp(); e <= hi && e < a.trunc(); ++e) {
        const int f = -1 - e;
        if (f >= b.trunc()) continue;
        const Scalar& x = a[e];
        const Scalar& y = b[f];
        if (sgn(x) == 0 || sgn(y) == 0) continue;
        mpq_mul(tmp, x.get_mpq_t(), y.get_mpq_t());
        mpq_add(r.get_mpq_t(), r.get_mpq_t(), tmp);
    }
    mpq_clear(tmp);
    return r;
}

namespace detail {
/// Power-series quotient num/den (den(0) != 0), coefficients t^0 .. t^(len-1).
inline std::vector<Scalar> poly_quotient_series(const Poly& num, const Poly& den, int len) {
    std::vector<Scalar> out(static_cast<std::size_t>(std::max(len, 0)));
    const Scalar inv0 = 1 / den.coeff(0);
    for (int k = 0; k < len; ++k) {
        Scalar s = num.coeff(k);
        for (int i = 1; i <= std::min(k, den.degree()); ++i) s -= den.coeff(i) * out[static_cast<std::size_t>(k - i)];
        out[static_cast<std::size_t>(k)] = s * inv0;
    }
    return out;
}
} // namespace detail

/// Laurent expansion of f at `center` with exponents below `trunc`. At
/// infinity the local variable is w = 1/z.
inline LaurentSeries expand(const RatFun& f, const Point& center, int trunc) {
    if (f.is_zero()) return LaurentSeries::zero(center, trunc);
    Poly num, den;
    if (center.is_infinity()) {
        num = f.num().reversed(f.num().degree());
        den = f.den().reversed(f.den().degree());
    } else {
        num = f.num().shifted(center.value());
        den = f.den().shifted(center.value());
    }
    auto strip = [](Poly& p) {
        int k = 0;
        while (sgn(p.coeff(k)) == 0) ++k;
        if (k > 0) p = Poly(std::vector<Scalar>(p.coeffs().begin() + k, p.coeffs().end()));
        return k;
    };
    int shift = strip(num) - strip(den);
    if (center.is_infinity()) shift += f.den().degree() - f.num().degree();
    const int len = trunc - shift;
    if (len <= 0) return LaurentSeries::zero(center, trunc);
    return LaurentSeries(center, shift, detail::poly_quotient_series(num, den, len));
}

/// outer(inner(t)) where inner(t) -> outer.center() as t -> 0. The outer
/// series may have a pole; the inner one must be a power series whose
/// constant term equals the outer center (finite).
inline LaurentSeries series_compose(const LaurentSeries& outer, const LaurentSeries& inner) {
    if (outer.center().is_infinity()) throw std::invalid_argument("incompatible centers: outer series at infinity");
    const Scalar& c0 = outer.center().value();
    if (inner.min_exp() < 0 || inner.trunc() <= 0 || inner.coeff(0) != c0)
        throw std::invalid_argument("incompatible centers: inner series does not tend to " + to_string(c0));
    const LaurentSeries v = add_constant(inner, Scalar(-c0));
    const int m = outer.min_exp();
    const int top = outer.trunc();
    if (v.is_zero() && m < 0) throw std::domain_error("composition with a pole at an exactly constant inner series");
    // error term O(v^top); min_exp is the exact valuation of v, or a lower
    // bound on it when v is zero to its truncation (then top > 0)
    const int cap = top * v.min_exp();
    LaurentSeries p = m >= 0 ? pow(v, m, cap) : pow(inverse(v), -m, cap);
    LaurentSeries acc = LaurentSeries::zero(inner.center(), cap);
    for (int e = m; e < top; ++e) {
        if (sgn(outer[e]) != 0) acc = acc + p * outer[e];
        if (e + 1 < top) p = mul(p, v, cap);
    }
    return acc;
}

/// Residue of the differential f dz at p. At infinity dz = -dw/w^2, so the
/// residue is minus the w^1 coefficient of f(1/w).
inline Scalar differential_residue(const RatFun& f, const Point& p) {
    if (p.is_infinity()) return -expand(f, p, 2).coeff(1);
    return expand(f, p, 0).coeff(-1);
}

} // namespace specrec

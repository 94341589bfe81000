#pragma once

// Rational functions on CP^1 with global coordinate z. The point at infinity
// is always handled in the chart w = 1/z.

#include "specrec/poly.hpp"
#include "specrec/scalar.hpp"

#include <compare>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrec {

/// A point of CP^1: a finite rational value or infinity.
class Point {
  public:
    Point(const Scalar& value) : value_(value) {}
    Point(long value) : value_(Scalar(value)) {}
    static Point infinity() { return Point(); }

    bool is_infinity() const { return !value_.has_value(); }
    const Scalar& value() const {
        if (!value_) throw std::logic_error("the point at infinity has no finite value");
        return *value_;
    }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.is_infinity() || b.is_infinity()) return a.is_infinity() == b.is_infinity();
        return *a.value_ == *b.value_;
    }
    /// Finite points in increasing order, infinity last.
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (a.is_infinity() && b.is_infinity()) return std::strong_ordering::equal;
        if (a.is_infinity()) return std::strong_ordering::greater;
        if (b.is_infinity()) return std::strong_ordering::less;
        const int c = cmp(*a.value_, *b.value_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

  private:
    Point() = default;
    std::optional<Scalar> value_;
};

inline std::string to_string(const Point& p) { return p.is_infinity() ? "infinity" : to_string(p.value()); }

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << to_string(p); }

/// Reduced quotient num/den with den monic; the zero function is 0/1.
class RatFun {
  public:
    RatFun() : den_(Poly::constant(Scalar(1))) {}
    RatFun(const Poly& p) : num_(p), den_(Poly::constant(Scalar(1))) {}
    RatFun(const Scalar& c) : RatFun(Poly::constant(c)) {}

    /// Throws std::domain_error for a zero denominator.
    static RatFun make(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
        if (num.is_zero()) return RatFun();
        Poly g = gcd(num, den);
        Poly n = exact_div(num, g);
        Poly d = exact_div(den, g);
        Scalar lead = d.leading();
        RatFun f;
        f.num_ = n * Scalar(1 / lead);
        f.den_ = d * Scalar(1 / lead);
        return f;
    }
    /// The coordinate function z.
    static RatFun z() { return RatFun(Poly{Scalar(0), Scalar(1)}); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return make(a.num_ + b.num_, a.den_);
        return make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a) {
        RatFun r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) { return make(a.num_ * b.num_, a.den_ * b.den_); }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("division by the zero rational function");
        return make(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  private:
    Poly num_;
    Poly den_;
};

inline RatFun ratfun_make(const Poly& num, const Poly& den) { return RatFun::make(num, den); }

inline std::string to_string(const RatFun& f) {
    if (f.den().is_constant()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << to_string(f); }

inline RatFun derivative(const RatFun& f) {
    const Poly& p = f.num();
    const Poly& q = f.den();
    return RatFun::make(p.derivative() * q - p * q.derivative(), q * q);
}

// ---------------------------------------------------------------------------
// Rational roots

struct RationalRoot {
    Scalar value;
    int multiplicity = 0;
};

struct RootSearch {
    std::vector<RationalRoot> roots; ///< sorted by value
    bool fully_split = false;        ///< product of (z - r)^m equals p up to a constant
};

namespace detail {

/// Positive divisors of |n| (n != 0) by trial division. Returns nullopt when
/// the cofactor left after the trial bound may still be composite.
inline std::optional<std::vector<Integer>> divisors(Integer n) {
    n = abs(n);
    std::vector<std::pair<Integer, int>> primes;
    constexpr unsigned long kTrialBound = 2'000'000;
    unsigned long p = 2;
    for (; p <= kTrialBound && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++e;
        }
        if (e > 0) primes.emplace_back(Integer(p), e);
    }
    if (n > 1) {
        if (Integer(p) * p <= n) return std::nullopt;
        primes.emplace_back(n, 1);
    }
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [prime, e] : primes) {
        const std::size_t base = divs.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

/// Integer polynomial proportional to p with content 1.
inline std::vector<Integer> primitive_integer_coeffs(const Poly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> v;
    Integer g = 0;
    for (const auto& c : p.coeffs()) {
        Integer x = c.get_num() * (l / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        v.push_back(x);
    }
    for (auto& x : v) x /= g;
    return v;
}

/// Rational roots of a square-free polynomial (each is simple). Candidates
/// come from divisors of the constant and leading coefficients; if either
/// cannot be factored by trial division the search gives up on this factor.
inline std::vector<Scalar> squarefree_rational_roots(Poly f) {
    std::vector<Scalar> roots;
    if (f.degree() >= 1 && sgn(f.coeff(0)) == 0) {
        roots.emplace_back(0);
        f = exact_div(f, Poly::linear_factor(Scalar(0)));
    }
    if (f.degree() < 1) return roots;
    if (f.degree() == 1) {
        roots.push_back(Scalar(-f.coeff(0) / f.coeff(1)));
        return roots;
    }
    auto ic = primitive_integer_coeffs(f);
    auto ps = divisors(ic.front());
    auto qs = divisors(ic.back());
    if (!ps || !qs) return roots;
    for (const auto& q : *qs) {
        for (const auto& p : *ps) {
            for (int sign : {1, -1}) {
                if (f.degree() < 1) break;
                Scalar r(sign * p, q);
                r.canonicalize();
                if (r.get_den() != q) continue; // seen with a smaller denominator
                if (sgn(f(r)) == 0) {
                    roots.push_back(r);
                    f = exact_div(f, Poly::linear_factor(r));
                }
            }
        }
    }
    return roots;
}

} // namespace detail

/// Rational zeros with multiplicities: square-free decomposition, then a
/// divisor search on each square-free factor.
inline RootSearch rational_zeros(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("rational_zeros of the zero polynomial");
    RootSearch out;
    int found_degree = 0;
    const auto factors = squarefree_factors(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (auto& r : detail::squarefree_rational_roots(factors[i])) {
            out.roots.push_back({r, static_cast<int>(i) + 1});
            found_degree += static_cast<int>(i) + 1;
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    out.fully_split = found_degree == p.degree();
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise queries

/// f(p), with infinity as a possible value. At p = infinity the value is read
/// off the degrees of num and den (chart w = 1/z).
inline Point evaluate(const RatFun& f, const Point& p) {
    if (p.is_infinity()) {
        const int dn = f.num().degree();
        const int dd = f.den().degree();
        if (f.is_zero() || dn < dd) return Point(Scalar(0));
        if (dn > dd) return Point::infinity();
        return Point(Scalar(f.num().leading() / f.den().leading()));
    }
    const Scalar& z = p.value();
    Scalar d = f.den()(z);
    if (sgn(d) == 0) return Point::infinity();
    return Point(Scalar(f.num()(z) / d));
}

/// Vanishing order of f at p (negative for a pole). At infinity, in the chart
/// w = 1/z: deg den - deg num.
inline int order_at(const RatFun& f, const Point& p) {
    if (f.is_zero()) throw std::domain_error("order_at of the zero function");
    if (p.is_infinity()) return f.den().degree() - f.num().degree();
    return f.num().root_multiplicity(p.value()) - f.den().root_multiplicity(p.value());
}

// ---------------------------------------------------------------------------
// Antiderivatives

/// f dz has a nonzero residue, so it has no rational antiderivative.
class NonzeroResidueError : public std::runtime_error {
  public:
    NonzeroResidueError(std::optional<Point> pole, std::optional<Scalar> residue, const std::string& what)
        : std::runtime_error(what), pole_(std::move(pole)), residue_(std::move(residue)) {}
    /// Empty when the offending poles are irrational.
    const std::optional<Point>& pole() const { return pole_; }
    const std::optional<Scalar>& residue() const { return residue_; }

  private:
    std::optional<Point> pole_;
    std::optional<Scalar> residue_;
};

/// Rational G with G' = f. Hermite reduction (Mack's linear variant) splits
/// the integral into a rational part and a remainder with square-free
/// denominator; the remainder vanishes exactly when every residue does.
inline RatFun residue_free_antiderivative(const RatFun& f) {
    auto [poly_part, rem] = divmod(f.num(), f.den());
    RatFun result(poly_part.integral());
    if (rem.is_zero()) return result;

    const Poly& D = f.den();
    Poly A = rem;
    Poly Dminus = gcd(D, D.derivative());
    Poly Dstar = exact_div(D, Dminus);
    while (Dminus.degree() > 0) {
        Poly Dminus2 = gcd(Dminus, Dminus.derivative());
        Poly DminusStar = exact_div(Dminus, Dminus2);
        Poly lhs = -exact_div(Dstar * Dminus.derivative(), Dminus);
        auto [B, C] = solve_bezout(lhs, DminusStar, A);
        A = C - exact_div(B.derivative() * Dstar, DminusStar);
        result = result + RatFun::make(B, Dminus);
        Dminus = Dminus2;
    }
    // remaining integrand A / Dstar with Dstar square-free
    auto [extra_poly, proper] = divmod(A, Dstar);
    if (!extra_poly.is_zero()) result = result + RatFun(extra_poly.integral());
    if (proper.is_zero()) return result;

    const Poly dD = Dstar.derivative();
    for (const auto& root : rational_zeros(Dstar).roots) {
        Scalar res = proper(root.value) / dD(root.value);
        if (sgn(res) != 0)
            throw NonzeroResidueError(Point(root.value), res,
                                      "nonzero residue " + to_string(res) + " at z = " + to_string(root.value));
    }
    throw NonzeroResidueError(std::nullopt, std::nullopt, "nonzero residue at an irrational pole");
}

} // namespace specrec

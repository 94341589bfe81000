#pragma once

#include "specrec/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrec {

/// Dense univariate polynomial over Q, coefficients in ascending degree.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

    static Poly constant(const Scalar& c) { return Poly(std::vector<Scalar>{c}); }
    static Poly monomial(const Scalar& c, int degree) {
        std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1);
        v.back() = c;
        return Poly(std::move(v));
    }
    /// z - root
    static Poly linear_factor(const Scalar& root) { return Poly(std::vector<Scalar>{-root, Scalar(1)}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    Scalar coeff(int i) const {
        if (i < 0 || i > degree()) return Scalar(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const Scalar& leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
        return coeffs_.back();
    }

    Scalar operator()(const Scalar& z) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Scalar> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly integral() const {
        std::vector<Scalar> v(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / static_cast<long>(i + 1);
        return Poly(std::move(v));
    }

    Poly monic() const {
        if (is_zero()) return {};
        return *this * Scalar(1 / leading());
    }

    /// Taylor shift: returns q with q(t) = p(t + c).
    Poly shifted(const Scalar& c) const {
        std::vector<Scalar> v = coeffs_;
        const std::size_t n = v.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j > i; --j) v[j - 1] += c * v[j];
        return Poly(std::move(v));
    }

    /// z^n p(1/z); requires n >= degree().
    Poly reversed(int n) const {
        if (n < degree()) throw std::invalid_argument("reversal degree below polynomial degree");
        std::vector<Scalar> v(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= degree(); ++i) v[static_cast<std::size_t>(n - i)] = coeffs_[static_cast<std::size_t>(i)];
        return Poly(std::move(v));
    }

    /// Multiplicity of the root c (0 if p(c) != 0). The zero polynomial is rejected.
    int root_multiplicity(const Scalar& c) const {
        if (is_zero()) throw std::domain_error("root multiplicity of the zero polynomial");
        Poly s = shifted(c);
        int m = 0;
        while (is_zero_coeff(s.coeffs_[static_cast<std::size_t>(m)])) ++m;
        return m;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Scalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<Scalar> v = a.coeffs_;
        for (auto& c : v) c = -c;
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Scalar> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (is_zero_coeff(a.coeffs_[i])) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Scalar& c) {
        if (is_zero_coeff(c)) return {};
        std::vector<Scalar> v = a.coeffs_;
        for (auto& x : v) x *= c;
        return Poly(std::move(v));
    }
    friend Poly operator*(const Scalar& c, const Poly& a) { return a * c; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    Poly pow(int e) const {
        Poly r = constant(Scalar(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

  private:
    static bool is_zero_coeff(const Scalar& c) { return sgn(c) == 0; }
    void trim() {
        while (!coeffs_.empty() && is_zero_coeff(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

/// Euclidean division a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly{}, a};
    std::vector<Scalar> rem = a.coeffs();
    std::vector<Scalar> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
    const Scalar inv_lead = 1 / b.leading();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    for (int k = a.degree() - db; k >= 0; --k) {
        Scalar q = rem[static_cast<std::size_t>(k + db)] * inv_lead;
        if (sgn(q) == 0) continue;
        quot[static_cast<std::size_t>(k)] = q;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Exact quotient; throws if b does not divide a.
inline Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("polynomial division is not exact");
    return q;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

/// Solves s*a + t*b = c with deg s < deg b. Requires gcd(a, b) | c.
inline std::pair<Poly, Poly> solve_bezout(const Poly& a, const Poly& b, const Poly& c) {
    // half-extended Euclid: s0*a = g (mod b)
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(Scalar(1)), s1;
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    auto [q, rem] = divmod(c, r0);
    if (!rem.is_zero()) throw std::logic_error("Bezout right-hand side not divisible by gcd");
    Poly s = q * s0;
    if (!b.is_constant()) s = divmod(s, b).second;
    else s = Poly{};
    Poly t = exact_div(c - s * a, b);
    return {s, t};
}

/// Yun's square-free decomposition of a nonzero polynomial, up to a constant:
/// p ~ prod_i result[i]^(i+1), each factor monic and square-free.
inline std::vector<Poly> squarefree_factors(const Poly& p) {
    if (p.is_zero()) throw std::domain_error("square-free decomposition of the zero polynomial");
    std::vector<Poly> out;
    Poly f = p.monic();
    if (f.degree() == 0) return out;
    Poly df = f.derivative();
    Poly a = gcd(f, df);
    Poly b = exact_div(f, a);
    Poly c = exact_div(df, a);
    Poly d = c - b.derivative();
    while (b.degree() > 0) {
        Poly fac = gcd(b, d);
        out.push_back(fac);
        b = exact_div(b, fac);
        c = exact_div(d, fac);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

/// Human-readable rendering in z, for diagnostics and reports.
inline std::string to_string(const Poly& p, const std::string& var = "z") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Scalar c = p.coeff(i);
        if (sgn(c) == 0) continue;
        std::string mag = Scalar(abs(c)).get_str();
        if (out.empty()) out += sgn(c) < 0 ? "-" : "";
        else out += sgn(c) < 0 ? " - " : " + ";
        if (i == 0) out += mag;
        else {
            if (mag != "1") out += mag + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

} // namespace specrec

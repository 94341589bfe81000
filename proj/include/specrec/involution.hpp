#pragma once

#include "specrec/laurent.hpp"
#include "specrec/ratfun.hpp"

#include <stdexcept>

namespace specrec {

/// Deviation sigma(t) = s_a(a + t) - a of the local Galois involution at a
/// simple critical point a of x, known for exponents below `trunc`.
///
/// Newton iteration on F(u) = X(u) - X(t), X(u) = x(a + u) - x(a), seeded
/// with u = -t. F'(u) has valuation 1, so an iterate correct below t^m gives
/// one correct below t^(2m-1).
inline LaurentSeries involution_deviation(const RatFun& x, const Point& a, int trunc) {
    if (a.is_infinity()) throw std::invalid_argument("involution at infinity is not supported");
    if (trunc < 2) trunc = 2;
    const RatFun dx = derivative(x);
    if (sgn(x.den()(a.value())) == 0) throw std::invalid_argument("x has a pole at " + to_string(a));
    if (dx.is_zero() || order_at(dx, a) != 1)
        throw std::invalid_argument("not a simple critical point of x: " + to_string(a));

    // X(u) known for exponents <= trunc, enough for X(sigma) mod t^(trunc+1)
    const LaurentSeries xa = add_constant(expand(x, a, trunc + 1), Scalar(-x.num()(a.value()) / x.den()(a.value())));
    const LaurentSeries xpa = derivative(xa);
    const LaurentSeries t_series = LaurentSeries::monomial(a, 1, Scalar(1), trunc + 1);

    // compose X with a pure power series u(t) of valuation 1; the outer
    // center is shifted to 0 so series_compose's center check applies
    auto at = [&](const LaurentSeries& outer, const LaurentSeries& u) {
        LaurentSeries outer0(Point(0), outer.min_exp(), outer.coeffs());
        LaurentSeries u0(Point(0), u.min_exp(), u.coeffs());
        LaurentSeries r = series_compose(outer0, u0);
        return LaurentSeries(a, r.min_exp(), r.coeffs());
    };

    auto residual_of = [&](const LaurentSeries& sigma) {
        return (at(xa, sigma.as_polynomial_to(trunc + 1)) - xa.truncated(trunc + 1)).truncated(trunc + 1);
    };

    LaurentSeries sigma = LaurentSeries::monomial(a, 1, Scalar(-1), 2);
    for (int correct = 2; correct < trunc; correct = 2 * correct - 1) {
        const LaurentSeries s = sigma.as_polynomial_to(trunc + 1);
        const LaurentSeries slope = at(xpa, s).truncated(trunc);
        const LaurentSeries step = div(residual_of(sigma), slope, trunc);
        sigma = s.truncated(trunc) - step.as_polynomial_to(trunc);
    }
    // X(sigma) - X(t) = O(t^(trunc+1)) certifies sigma below t^trunc
    if (!residual_of(sigma).is_zero())
        throw std::logic_error("Newton iteration for the Galois involution did not converge");
    return sigma.truncated(trunc);
}

/// s_a(z) as a series in t = z - a (constant term a).
inline LaurentSeries galois_involution_series(const RatFun& x, const Point& a, int trunc) {
    return add_constant(involution_deviation(x, a, trunc), a.value());
}

} // namespace specrec

#pragma once

// Pole-basis storage of the correlators omega_{g,n}, 2g-2+n > 0. On a genus
// zero curve each one is a finite combination of
//
//     prod_i dz_i / (z_i - a_i)^{k_i},   k_i >= 2,
//
// with a_i ranging over the branchpoints.

#include "specrec/laurent.hpp"
#include "specrec/ratfun.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace specrec {

/// dz / (z - a)^order with a = branch_locations[branch] of the owning
/// correlator.
struct BasisElem {
    std::uint16_t branch = 0;
    std::uint16_t order = 2;
    friend auto operator<=>(const BasisElem&, const BasisElem&) = default;
};

using SlotKey = std::vector<BasisElem>;

struct Correlator {
    int g = 0;
    int n = 0;
    std::vector<Point> branch_locations;
    std::map<SlotKey, Scalar> coeffs; ///< zero coefficients are never stored

    bool is_zero() const { return coeffs.empty(); }

    const Point& location(const BasisElem& e) const { return branch_locations.at(e.branch); }

    int max_order() const {
        int m = 0;
        for (const auto& [key, c] : coeffs)
            for (const auto& e : key) m = std::max(m, static_cast<int>(e.order));
        return m;
    }

    void add(const SlotKey& key, const Scalar& c) {
        if (sgn(c) == 0) return;
        auto [it, inserted] = coeffs.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) coeffs.erase(it);
        }
    }

    friend bool operator==(const Correlator& a, const Correlator& b) {
        return a.g == b.g && a.n == b.n && a.branch_locations == b.branch_locations && a.coeffs == b.coeffs;
    }
};

/// Raised when a correlator is evaluated at one of its poles.
class PoleEvaluationError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

namespace detail {
/// Value of the dz-coefficient 1/(z - a)^k at p (0 at infinity).
inline Scalar basis_value(const Point& a, int k, const Point& p) {
    if (p.is_infinity()) return Scalar(0);
    Scalar d = p.value() - a.value();
    if (sgn(d) == 0) throw PoleEvaluationError("correlator evaluated at its pole z = " + to_string(a));
    Scalar r(1);
    for (int i = 0; i < k; ++i) r /= d;
    return r;
}
} // namespace detail

/// Substitutes points into every slot but at most one. With one free slot the
/// result is the dz-coefficient in that variable (a RatFun), otherwise a
/// Scalar. Points at infinity give the value of the dz-coefficient there.
inline std::variant<RatFun, Scalar> correlator_eval(const Correlator& w, const std::vector<std::optional<Point>>& args) {
    if (static_cast<int>(args.size()) != w.n) throw std::invalid_argument("correlator_eval: wrong number of arguments");
    const auto free_count = std::count_if(args.begin(), args.end(), [](const auto& a) { return !a.has_value(); });
    if (free_count > 1) throw std::invalid_argument("correlator_eval: at most one slot may stay free");
    const int free_slot = free_count == 1
        ? static_cast<int>(std::find_if(args.begin(), args.end(), [](const auto& a) { return !a.has_value(); }) - args.begin())
        : -1;

    // accumulate per basis element of the free slot (or a single total)
    std::map<BasisElem, Scalar> free_part;
    Scalar total(0);
    for (const auto& [key, c] : w.coeffs) {
        Scalar v = c;
        for (int i = 0; i < w.n; ++i) {
            if (i == free_slot) continue;
            v *= detail::basis_value(w.location(key[static_cast<std::size_t>(i)]), key[static_cast<std::size_t>(i)].order, *args[static_cast<std::size_t>(i)]);
        }
        if (free_slot < 0) total += v;
        else free_part[key[static_cast<std::size_t>(free_slot)]] += v;
    }
    if (free_slot < 0) return total;

    // common denominator prod_a (z - a)^{max order}
    std::map<std::uint16_t, int> max_order;
    for (const auto& [e, c] : free_part)
        if (sgn(c) != 0) max_order[e.branch] = std::max(max_order[e.branch], static_cast<int>(e.order));
    Poly den = Poly::constant(Scalar(1));
    for (const auto& [b, k] : max_order) den = den * Poly::linear_factor(w.branch_locations.at(b).value()).pow(k);
    Poly num;
    for (const auto& [e, c] : free_part) {
        if (sgn(c) == 0) continue;
        Poly cofactor = Poly::constant(c);
        for (const auto& [b, k] : max_order) {
            const int power = b == e.branch ? k - e.order : k;
            cofactor = cofactor * Poly::linear_factor(w.branch_locations.at(b).value()).pow(power);
        }
        num = num + cofactor;
    }
    return RatFun::make(num, den);
}

/// The dz-coefficient of a one-point correlator as a rational function.
inline RatFun one_point_function(const Correlator& w) {
    if (w.n != 1) throw std::invalid_argument("one_point_function needs n = 1");
    return std::get<RatFun>(correlator_eval(w, {std::nullopt}));
}

/// Applies a permutation to the slots: result slot i holds original slot perm[i].
inline Correlator permuted(const Correlator& w, const std::vector<int>& perm) {
    Correlator out{w.g, w.n, w.branch_locations, {}};
    for (const auto& [key, c] : w.coeffs) {
        SlotKey k(key.size());
        for (std::size_t i = 0; i < key.size(); ++i) k[i] = key[static_cast<std::size_t>(perm[i])];
        out.coeffs.emplace(std::move(k), c);
    }
    return out;
}

} // namespace specrec

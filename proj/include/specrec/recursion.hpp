#pragma once

// Topological recursion on a genus-zero spectral curve.
//
// For a branchpoint a and t = z - a, write sigma(t) = s_a(z) - a. The kernel
//
//   K_a(z1, z) = -1/2 (1/(z1 - z) - 1/(z1 - s_a(z))) dz1 / ((y(z) - y(s_a(z))) x'(z) dz)
//
// is expanded with 1/(z1 - a - u) = sum_j u^j / (z1 - a)^{j+1}, so the
// coefficient of dz1/(z1 - a)^{j+1} is the t-series
//
//   R_j(t) = (t^j - sigma^j) W(t),   W = -1/2 / ((y(a+t) - y(a+sigma)) x'(a+t)).
//
// The bracket of the recursion is assembled as a map from spectator basis
// tuples to t-series, and every output coefficient is Res_t R_j * bracket.
// Spectators are never instantiated: omega_{0,2}(z, z_j) contributes
// sum_m (m+1) t^m dz_j/(z_j - a)^{m+2}.

#include "specrec/correlator.hpp"
#include "specrec/curve.hpp"
#include "specrec/laurent.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace specrec {

/// Numerator increment of the kernel: for each j >= 1 the t-series
/// t^j - sigma(t)^j, coefficient of dz1/(z1 - a)^{j+1} in
/// (1/(z1 - z) - 1/(z1 - s_a(z))) dz1. Index 0 holds the (vanishing) j = 0 term.
inline std::vector<LaurentSeries> omega02_transition(const LaurentSeries& sigma, int jmax) {
    const Point& a = sigma.center();
    std::vector<LaurentSeries> out;
    out.push_back(LaurentSeries::zero(a, sigma.trunc()));
    LaurentSeries sp = sigma;
    for (int j = 1; j <= jmax; ++j) {
        if (j > 1) sp = mul(sp, sigma);
        out.push_back(LaurentSeries::monomial(a, j, Scalar(1), sp.trunc()) - sp);
    }
    return out;
}

/// dz-coefficient of omega_{0,1} = y dx.
inline RatFun omega01(const SpectralCurve& c) { return c.y * derivative(c.x); }

/// (y(z) - y(s_a(z))) x'(z) at a, for a given deviation series sigma. On a
/// regular curve it vanishes to order exactly 2.
inline LaurentSeries kernel_denominator(const SpectralCurve& c, const LaurentSeries& sigma) {
    const Point& a = sigma.center();
    const int depth = sigma.trunc();
    const LaurentSeries y_at_z = expand(c.y, a, depth + 2);
    const LaurentSeries y_at_s = series_compose(y_at_z, add_constant(sigma, a.value()));
    return mul(y_at_z - y_at_s, expand(derivative(c.x), a, depth + 2));
}

struct KernelExpansion {
    Point branchpoint;
    /// by_order[j] is the t-series multiplying dz1/(z1 - a)^{j+1}; j = 0 is zero.
    std::vector<LaurentSeries> by_order;

    /// Coefficient of t^e dz1/(z1 - a)^m.
    Scalar coefficient(int e, int m) const {
        const int j = m - 1;
        if (j < 1 || j >= static_cast<int>(by_order.size())) return Scalar(0);
        return by_order[static_cast<std::size_t>(j)].coeff(e);
    }
};

namespace detail {

/// Everything the recursion needs at one branchpoint, to a fixed depth.
struct LocalData {
    Point a;
    int depth = 0;
    LaurentSeries sigma;  ///< s_a(z) - a
    LaurentSeries sprime; ///< d s_a / dz
    LaurentSeries weight; ///< W(t) above
    std::vector<LaurentSeries> kernel; ///< R_j, index j
    /// (z - b)^-k and s'(z) (s(z) - b)^-k at a, per branch index b, index k
    std::vector<std::vector<LaurentSeries>> at_z, at_s;
    LaurentSeries omega02_diag; ///< omega_{0,2}(z, s(z)) / dz^2
};

inline LocalData make_local(const SpectralCurve& c, const std::vector<Point>& branches, std::size_t index, int depth,
                            int max_order) {
    LocalData L{branches[index], depth, LaurentSeries::zero(branches[index], 0), LaurentSeries::zero(branches[index], 0),
                LaurentSeries::zero(branches[index], 0), {}, {}, {}, LaurentSeries::zero(branches[index], 0)};
    const Point& a = L.a;
    L.sigma = involution_deviation(c.x, a, depth);
    L.sprime = derivative(L.sigma);
    const LaurentSeries denom = kernel_denominator(c, L.sigma);
    if (denom.is_zero() || denom.min_exp() != 2)
        throw std::domain_error("kernel denominator does not vanish to order exactly 2 at z = " + to_string(a));
    L.weight = inverse(denom) * Scalar(-1, 2);

    const auto numer = omega02_transition(L.sigma, depth);
    L.kernel.push_back(LaurentSeries::zero(a, depth));
    for (int j = 1; j <= depth; ++j) L.kernel.push_back(mul(numer[static_cast<std::size_t>(j)], L.weight));

    L.at_z.resize(branches.size());
    L.at_s.resize(branches.size());
    for (std::size_t b = 0; b < branches.size(); ++b) {
        auto& zs = L.at_z[b];
        auto& ss = L.at_s[b];
        const Scalar shift = a.value() - branches[b].value();
        // 1/(z - b) and 1/(s(z) - b) at a
        const LaurentSeries inv_z = b == index ? LaurentSeries::monomial(a, -1, Scalar(1), depth)
                                               : expand(RatFun::make(Poly::constant(Scalar(1)), Poly::linear_factor(branches[b].value())), a, depth);
        const LaurentSeries inv_s = inverse(add_constant(L.sigma, shift));
        zs.push_back(LaurentSeries::monomial(a, 0, Scalar(1), depth));
        ss.push_back(L.sprime);
        for (int k = 1; k <= max_order; ++k) {
            zs.push_back(b == index ? LaurentSeries::monomial(a, -k, Scalar(1), depth) : mul(zs.back(), inv_z));
            ss.push_back(mul(ss.back(), inv_s));
        }
    }
    const LaurentSeries diff = LaurentSeries::monomial(a, 1, Scalar(1), L.sigma.trunc()) - L.sigma;
    L.omega02_diag = mul(L.sprime, pow(inverse(diff), 2));
    return L;
}

/// A factor omega_{h,1+m}(z or s(z), I) of the bracket: partial spectator
/// tuple (length m) -> t-series.
using FactorMap = std::map<SlotKey, LaurentSeries>;

inline int min_exponent(const FactorMap& f) {
    int m = LaurentSeries::kNoCap;
    for (const auto& [k, s] : f) m = std::min(m, s.min_exp());
    return m;
}

} // namespace detail

struct EngineOptions {
    /// Series depth beyond the minimum the pole orders require.
    int guard = 4;
    /// Recompute every correlator with guard + 2 and compare coefficients.
    bool verify_stability = false;
};

struct LevelRecord {
    int g = 0;
    int n = 0;
    int depth = 0;            ///< involution depth used
    bool stability_checked = false;
    bool stable = true;
};

/// Per-curve session with a memo table keyed by (g, n). Entries are published
/// only when complete; memo access is serialized, computation is not, so two
/// threads asking for the same entry may both compute it.
class RecursionEngine {
  public:
    explicit RecursionEngine(SpectralCurve curve, EngineOptions options = {})
        : curve_(std::move(curve)), options_(options) {
        require_regular(curve_);
        for (const auto& [a, mult] : differential_zeros(curve_.x).zeros) {
            (void)mult;
            branches_.push_back(a);
        }
    }

    const SpectralCurve& curve() const { return curve_; }
    const std::vector<Point>& branch_locations() const { return branches_; }
    const EngineOptions& options() const { return options_; }

    const Correlator& omega(int g, int n) {
        if (g < 0 || n < 1 || 2 * g - 2 + n <= 0)
            throw std::invalid_argument("omega(" + std::to_string(g) + "," + std::to_string(n) +
                                        ") is not a stable correlator (need 2g-2+n > 0, n >= 1)");
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find({g, n}); it != memo_.end()) return it->second;
        }
        LevelRecord record{g, n, 0, false, true};
        Correlator w = compute_with_retry(g, n, options_.guard, record.depth);
        if (options_.verify_stability) {
            int depth2 = 0;
            Correlator w2 = compute_with_retry(g, n, options_.guard + 2, depth2);
            record.stability_checked = true;
            record.stable = w2 == w;
            if (!record.stable)
                throw std::logic_error("truncation instability in omega(" + std::to_string(g) + "," + std::to_string(n) + ")");
        }
        std::lock_guard lock(mutex_);
        auto [it, inserted] = memo_.emplace(std::make_pair(g, n), std::move(w));
        if (inserted) records_.push_back(record);
        return it->second;
    }

    /// Kernel of the branchpoint with the given index, to involution depth `depth`.
    KernelExpansion kernel_expansion(std::size_t branch, int depth) const {
        auto L = detail::make_local(curve_, branches_, branch, depth, 2);
        return {branches_.at(branch), L.kernel};
    }

    std::vector<LevelRecord> records() const {
        std::lock_guard lock(mutex_);
        return records_;
    }

    /// Correlators computed so far, in (g, n) order.
    std::vector<std::pair<int, int>> computed_levels() const {
        std::lock_guard lock(mutex_);
        std::vector<std::pair<int, int>> out;
        for (const auto& [k, w] : memo_) out.push_back(k);
        return out;
    }

  private:
    Correlator empty(int g, int n) const { return Correlator{g, n, branches_, {}}; }

    /// Largest pole order among the correlators the bracket of (g, n) uses.
    int bracket_pole_order(int g, int n) {
        int p = 2;
        if (g >= 1 && !(g == 1 && n == 1)) p = std::max(p, omega(g - 1, n + 1).max_order());
        for (int h = 0; h <= g; ++h)
            for (int m = 0; m <= n - 1; ++m) {
                if ((h == 0 && m <= 1) || (h == g && m == n - 1)) continue;
                p = std::max(p, omega(h, 1 + m).max_order());
            }
        return p;
    }

    Correlator compute_with_retry(int g, int n, int guard, int& depth_used) {
        if (branches_.empty()) return empty(g, n);
        const int p = bracket_pole_order(g, n);
        for (int attempt = 0;; ++attempt) {
            const int depth = 2 * p + 2 + guard + 4 * attempt;
            try {
                Correlator w = compute(g, n, depth, p);
                depth_used = depth;
                return w;
            } catch (const TruncationError&) {
                if (attempt >= 3) throw;
            }
        }
    }

    detail::FactorMap factor(const detail::LocalData& L, std::size_t branch, int h, int m, bool at_s, int other_min) {
        detail::FactorMap out;
        const int cap = 1 - other_min;
        if (h == 0 && m == 1) {
            // omega_{0,2}(u, z_j): sum_k (k+1) u^k u' dz_j/(z_j - a)^{k+2}, u = t or sigma
            LaurentSeries power = at_s ? L.sprime : LaurentSeries::monomial(L.a, 0, Scalar(1), L.depth);
            for (int k = 0; k <= std::max(0, -other_min); ++k) {
                if (k > 0) power = mul(power, at_s ? L.sigma : LaurentSeries::monomial(L.a, 1, Scalar(1), L.depth), cap);
                SlotKey key{BasisElem{static_cast<std::uint16_t>(branch), static_cast<std::uint16_t>(k + 2)}};
                out.emplace(std::move(key), power * Scalar(k + 1));
            }
            return out;
        }
        const Correlator& w = omega(h, 1 + m);
        const auto& table = at_s ? L.at_s : L.at_z;
        for (const auto& [key, c] : w.coeffs) {
            SlotKey rest(key.begin() + 1, key.end());
            const LaurentSeries& s = table[key[0].branch][key[0].order];
            auto it = out.find(rest);
            if (it == out.end()) out.emplace(std::move(rest), s * c);
            else add_scaled(it->second, s, c);
        }
        return out;
    }

    Correlator compute(int g, int n, int depth, int max_order) {
        Correlator result = empty(g, n);
        const int spectators = n - 1;
        for (std::size_t bi = 0; bi < branches_.size(); ++bi) {
            const auto L = detail::make_local(curve_, branches_, bi, depth, max_order);
            std::map<SlotKey, LaurentSeries> bracket;
            auto accumulate = [&](SlotKey key, const LaurentSeries& s) {
                auto it = bracket.find(key);
                if (it == bracket.end()) bracket.emplace(std::move(key), s);
                else it->second = it->second + s;
            };

            // omega_{g-1,n+1}(z, s(z), J)
            if (g >= 1) {
                if (g == 1 && n == 1) {
                    accumulate({}, L.omega02_diag.truncated(1));
                } else {
                    const Correlator& w = omega(g - 1, n + 1);
                    // group by (J tuple, second slot) before multiplying by the s-factor
                    std::map<std::pair<SlotKey, BasisElem>, LaurentSeries> grouped;
                    for (const auto& [key, c] : w.coeffs) {
                        std::pair<SlotKey, BasisElem> gk{SlotKey(key.begin() + 2, key.end()), key[1]};
                        const LaurentSeries& s = L.at_z[key[0].branch][key[0].order];
                        auto it = grouped.find(gk);
                        if (it == grouped.end()) grouped.emplace(std::move(gk), s * c);
                        else add_scaled(it->second, s, c);
                    }
                    for (const auto& [gk, s] : grouped)
                        accumulate(gk.first, mul(s, L.at_s[gk.second.branch][gk.second.order], 1));
                }
            }

            // sum' over h + h' = g, I + I' = J, excluding (0, {}) and (g, J)
            std::map<std::tuple<int, int, bool>, detail::FactorMap> cache;
            auto min_of = [&](int h, int m) {
                if (h == 0 && m == 1) return 0;
                return -omega(h, 1 + m).max_order();
            };
            auto get = [&](int h, int m, bool at_s, int other_min) -> const detail::FactorMap& {
                auto key = std::make_tuple(h, m, at_s);
                auto it = cache.find(key);
                if (it == cache.end()) it = cache.emplace(key, factor(L, bi, h, m, at_s, other_min)).first;
                return it->second;
            };
            for (int h = 0; h <= g; ++h) {
                for (unsigned mask = 0; mask < (1u << spectators); ++mask) {
                    const int m = std::popcount(mask);
                    const int h2 = g - h;
                    const int m2 = spectators - m;
                    if ((h == 0 && m == 0) || (h2 == 0 && m2 == 0)) continue;
                    const auto& left = get(h, m, false, min_of(h2, m2));
                    const auto& right = get(h2, m2, true, min_of(h, m));
                    for (const auto& [kl, sl] : left) {
                        for (const auto& [kr, sr] : right) {
                            if (sl.min_exp() + sr.min_exp() > 0) continue;
                            SlotKey full(static_cast<std::size_t>(spectators));
                            std::size_t il = 0, ir = 0;
                            for (int pos = 0; pos < spectators; ++pos)
                                full[static_cast<std::size_t>(pos)] = (mask >> pos) & 1u ? kl[il++] : kr[ir++];
                            accumulate(std::move(full), mul(sl, sr, 1));
                        }
                    }
                }
            }

            // residues
            for (const auto& [spect, series] : bracket) {
                if (series.is_zero()) {
                    if (series.trunc() <= 0) throw TruncationError("bracket truncated below t^0");
                    continue;
                }
                const int jmax = 1 - series.min_exp();
                for (int j = 1; j <= jmax; ++j) {
                    if (j >= static_cast<int>(L.kernel.size())) throw TruncationError("kernel order exceeds depth");
                    Scalar r = residue_of_product(L.kernel[static_cast<std::size_t>(j)], series);
                    if (sgn(r) == 0) continue;
                    SlotKey key;
                    key.reserve(static_cast<std::size_t>(n));
                    key.push_back(BasisElem{static_cast<std::uint16_t>(bi), static_cast<std::uint16_t>(j + 1)});
                    key.insert(key.end(), spect.begin(), spect.end());
                    result.add(key, r);
                }
            }
        }
        return result;
    }

    SpectralCurve curve_;
    EngineOptions options_;
    std::vector<Point> branches_;
    mutable std::mutex mutex_;
    std::map<std::pair<int, int>, Correlator> memo_;
    std::vector<LevelRecord> records_;
};

/// Kernel expansion at a branchpoint record of c.
inline KernelExpansion kernel_expansion(const SpectralCurve& c, const BranchPointData& a, int depth) {
    std::vector<Point> locations;
    for (const auto& [p, mult] : differential_zeros(c.x).zeros) {
        (void)mult;
        locations.push_back(p);
    }
    const auto it = std::find(locations.begin(), locations.end(), a.location);
    if (it == locations.end()) throw std::invalid_argument("not a branchpoint of the curve: " + to_string(a.location));
    auto L = detail::make_local(c, locations, static_cast<std::size_t>(it - locations.begin()), depth, 2);
    return {a.location, L.kernel};
}

} // namespace specrec

#include "specrec/invariants.hpp"
#include "specrec/io.hpp"

#include <gtest/gtest.h>

using namespace specrec;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Scalar> v;
    for (long x : c) v.emplace_back(x);
    return Poly(std::move(v));
}

RatFun R(std::initializer_list<long> num, std::initializer_list<long> den) { return ratfun_make(P(num), P(den)); }

SpectralCurve curve(const char* name) { return *corpus_curve(name); }

const CheckResult& check(const std::vector<CheckResult>& list, const std::string& name) {
    for (const auto& c : list)
        if (c.name == name) return c;
    throw std::logic_error("no check " + name);
}

} // namespace

TEST(PhiSeries, Examples) {
    const auto airy = phi_series(curve("AIRY"), Point(0), 6);
    EXPECT_EQ(airy.min_exp(), 3);
    EXPECT_EQ(airy.coeff(3), Scalar(2, 3));
    EXPECT_EQ(airy.coeff(4), Scalar(0));
    EXPECT_EQ(airy.coeff(5), Scalar(0));
    for (const auto& c : corpus())
        for (const auto& b : branchpoints(c)) {
            const auto phi = phi_series(c, b.location, 8);
            EXPECT_EQ(derivative(phi), expand(omega01(c), b.location, 7)) << c.name;
            EXPECT_EQ(phi.coeff(0), Scalar(0));
            EXPECT_EQ(phi_series(c, b.location, 8, Scalar(7)).coeff(0), Scalar(7));
        }
    EXPECT_THROW(phi_series(curve("C1"), Point(0), 4), std::domain_error);
}

TEST(FreeEnergy, RejectsLowGenus) {
    RecursionEngine e(curve("C1"));
    EXPECT_THROW(free_energy(e, 1), std::invalid_argument);
    EXPECT_THROW(correction_term(e, 0), std::invalid_argument);
}

TEST(FreeEnergy, EmptyBranchpointSetAndAiry) {
    RecursionEngine swapped(swap(curve("AIRY")));
    RecursionEngine airy(curve("AIRY"));
    for (int g = 2; g <= 3; ++g) {
        EXPECT_EQ(free_energy(swapped, g), Scalar(0));
        // omega_{g,1} ~ z^{2-6g} dz and Phi ~ z^3 have no residue together
        EXPECT_EQ(free_energy(airy, g), Scalar(0));
    }
}

TEST(FreeEnergy, PhiConstantDoesNotMatter) {
    for (const auto& c : corpus())
        for (const auto& side : {c, swap(c)}) {
            RecursionEngine e(side);
            for (int g = 2; g <= 3; ++g) EXPECT_EQ(free_energy(e, g, Scalar(7)), free_energy(e, g)) << side.name << " g=" << g;
        }
}

TEST(FreeEnergy, ZeroTimesGiveSymmetricF2) {
    RecursionEngine e(curve("C2"));
    RecursionEngine s(swap(curve("C2")));
    EXPECT_EQ(free_energy(e, 2), free_energy(s, 2));
    EXPECT_EQ(correction_term(e, 2), Scalar(0));
    EXPECT_EQ(corrected_free_energy(e, 2), free_energy(e, 2));
}

TEST(Correction, BasepointIndependence) {
    RecursionEngine e(curve("C1"));
    for (int g = 2; g <= 3; ++g) {
        const Scalar at2 = correction_term(e, g, Point(2));
        const Scalar at3 = correction_term(e, g, Point(3));
        EXPECT_EQ(at2, at3);
        EXPECT_EQ(at2, correction_term(e, g));
        EXPECT_EQ(at2, correction_term(e, g, Point(Scalar(-5, 7))));
    }
}

TEST(Correction, PrimitiveDifferentiatesBack) {
    RecursionEngine e(curve("C4"));
    for (int g = 2; g <= 3; ++g) EXPECT_EQ(derivative(one_point_primitive(e, g)), one_point_function(e.omega(g, 1)));
}

TEST(Pairing, TwoPathsAgreeAndAntisymmetry) {
    for (const auto& c : corpus()) {
        RecursionEngine e(c);
        RecursionEngine s(swap(c));
        for (int g = 2; g <= 3; ++g) {
            const Scalar pairing = integration_constant_pairing(e, s, g);
            EXPECT_EQ(Scalar(2 - 2 * g) * (free_energy(e, g) - free_energy(s, g)), pairing) << c.name << " g=" << g;
            EXPECT_EQ(integration_constant_pairing(s, e, g), -pairing);
        }
    }
}

TEST(IdentityChecks, C1GenusTwo) {
    RecursionEngine e(curve("C1"));
    RecursionEngine s(swap(curve("C1")));
    const auto checks = identity_checks(e, s, 2);
    ASSERT_EQ(checks.size(), 3u);
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}

TEST(IdentityChecks, SingleOnePointFunctionIsExact) {
    for (const auto& c : corpus()) {
        RecursionEngine e(c);
        const RatFun f = one_point_function(e.omega(2, 1));
        for (const auto& a : e.branch_locations()) EXPECT_EQ(differential_residue(f, a), Scalar(0));
        EXPECT_EQ(differential_residue(f, Point::infinity()), Scalar(0));
    }
}

TEST(IdentityChecks, C2OrderAtInfinity) {
    RecursionEngine e(curve("C2"));
    RecursionEngine s(swap(curve("C2")));
    const auto& c = check(identity_checks(e, s, 2), "vanishing_order_at_poles");
    EXPECT_TRUE(c.passed) << c.witness;
    EXPECT_NE(c.witness.find(">= 5"), std::string::npos) << c.witness;
}

TEST(IdentityChecks, DetectsAViolation) {
    // the differential order at infinity of dz/z^2 is 0, of z^3 dz is -5
    EXPECT_EQ(differential_order(R({1}, {0, 0, 1}), Point::infinity()), 0);
    EXPECT_EQ(differential_order(R({0, 0, 0, 1}, {1}), Point::infinity()), -5);
    EXPECT_EQ(differential_order(R({0, 0, 0, 1}, {1}), Point(0)), 3);
}

TEST(SymmetryReport, C1) {
    const auto r = symmetry_report(curve("C1"), 3);
    ASSERT_TRUE(r.valid());
    EXPECT_FALSE(r.out_of_regime);
    ASSERT_EQ(r.rows.size(), 2u);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.hat_diff, Scalar(0));
        EXPECT_EQ(row.hat, row.free_energy - row.correction / Scalar(2 - 2 * row.g));
        EXPECT_TRUE(row.two_path_agrees);
        EXPECT_FALSE(row.hat_diff_opposite_sign.has_value());
        EXPECT_TRUE(row.passed());
    }
    EXPECT_TRUE(r.certified());
}

TEST(SymmetryReport, C2ZeroTimes) {
    const auto r = symmetry_report(curve("C2"), 2);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].raw_diff, Scalar(0));
    EXPECT_EQ(r.rows[0].correction, Scalar(0));
    EXPECT_EQ(r.rows[0].correction_swapped, Scalar(0));
    EXPECT_TRUE(r.certified());
}

TEST(SymmetryReport, AiryIsOutOfRegime) {
    const auto r = symmetry_report(curve("AIRY"), 3);
    EXPECT_TRUE(r.valid());
    EXPECT_TRUE(r.out_of_regime);
    ASSERT_EQ(r.regime_notes.size(), 1u);
    EXPECT_EQ(r.regime_notes[0], "AIRY.swap has no branchpoints");
    for (const auto& row : r.rows) EXPECT_EQ(row.free_energy_swapped, Scalar(0));
}

TEST(SymmetryReport, InvalidCurveIsReportedNotThrown) {
    const SpectralCurve bad("bad", R({0, -3, 0, 1}, {1}), R({1, 0, 1}, {0, 1}));
    SymmetryReport r;
    ASSERT_NO_THROW(r = symmetry_report(bad, 2));
    EXPECT_FALSE(r.valid());
    EXPECT_FALSE(r.certified());
    EXPECT_TRUE(r.rows.empty());
    EXPECT_THROW(symmetry_report(curve("C1"), 1), std::invalid_argument);
}

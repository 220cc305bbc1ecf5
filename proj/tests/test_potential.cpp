#include <doctest.h>

#include <cmath>

#include "iskp/potential.hpp"

using namespace iskp;

namespace {
const Molecule& h2() {
    static const Molecule m = lookup_molecule("H2", MoleculeDatabase::builtin());
    return m;
}
} // namespace

TEST_CASE("strength constants") {
    for (int c : {-1, 0, 1}) {
        const StrengthConstants s = derive_strengths(potential_from_molecule(h2(), c, 0.0));
        CHECK(s.P3 == doctest::Approx(7.03719).epsilon(1e-6));
        CHECK(s.P4 == doctest::Approx(4.7446 * 0.7416 * 0.7416).epsilon(1e-15)); // 2.609386
        if (c == -1) {
            CHECK(s.P1 == 0.0);
            CHECK(s.P2 == 0.0);
        } else {
            CHECK(s.P1 == doctest::Approx(s.P3 * (1 + c)));
            CHECK(s.P2 == doctest::Approx(s.P4 * (1 + c)));
        }
    }
}

TEST_CASE("potential limits") {
    PotentialParams k = potential_from_molecule(h2(), -1, 0.0);
    k.alpha = 0.0;
    CHECK(evaluate_potential(k, h2().re) == doctest::Approx(-h2().De).epsilon(1e-14));

    const PotentialParams sk = potential_from_molecule(h2(), -1, 0.0);
    CHECK(evaluate_potential(sk, h2().re) ==
          doctest::Approx(-h2().De * std::exp(-h2().alpha * h2().re)).epsilon(1e-14));
}

TEST_CASE("ISKP at r = 1 against a term-by-term long double evaluation") {
    const PotentialParams p = potential_from_molecule(h2(), 1, h2().alpha);
    const long double r = 1.0L, De = p.De, a = p.a, b = p.b, s = (long double)p.alpha + p.delta;
    const long double x = s * r / 2;
    const long double ref = -4 * De * (a / r - b / (2 * r * r)) * (std::exp(-x) * std::cosh(x) + 0.5L);
    CHECK(evaluate_potential(p, 1.0) == doctest::Approx((double)ref).epsilon(1e-14));
}

TEST_CASE("special case classification") {
    PotentialParams p = potential_from_molecule(h2(), -1, 0.0);
    p.alpha = 0.0;
    CHECK(reduce_special_case(p) == SpecialCase::Kratzer);
    p = potential_from_molecule(h2(), 0, h2().alpha);
    CHECK(reduce_special_case(p) == SpecialCase::ScreenedCoshKratzer);
    p = potential_from_molecule(h2(), -1, 0.0);
    CHECK(reduce_special_case(p) == SpecialCase::ScreenedKratzer);
    p = potential_from_molecule(h2(), 1, 0.3);
    CHECK(reduce_special_case(p) == SpecialCase::ISKP);
    CHECK(to_string(SpecialCase::Kratzer) == "Kratzer");
}

TEST_CASE("special cases agree with their closed forms on [0.1 re, 10 re]") {
    std::vector<PotentialParams> cases;
    PotentialParams k = potential_from_molecule(h2(), -1, 0.0);
    k.alpha = 0.0;
    cases.push_back(k);
    cases.push_back(potential_from_molecule(h2(), -1, 0.0));
    cases.push_back(potential_from_molecule(h2(), 0, h2().alpha));
    cases.push_back(potential_from_molecule(h2(), 1, 0.7));
    cases.push_back(potential_from_molecule(h2(), 0, 0.0));
    for (const auto& p : cases) {
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double r = h2().re * (0.1 + 9.9 * i / 2000.0);
            const double v = evaluate_potential(p, r), w = special_case_potential(p, r);
            if (w != 0.0) worst = std::max(worst, std::fabs(v - w) / std::fabs(w));
        }
        CAPTURE(to_string(reduce_special_case(p)));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("potential is finite on compact intervals and at large r") {
    for (int c : {-1, 0, 1}) {
        const PotentialParams p = potential_from_molecule(h2(), c, h2().alpha);
        for (int i = 1; i <= 10000; ++i) {
            const double r = 1e-3 * i;
            REQUIRE(std::isfinite(evaluate_potential(p, r)));
        }
        CHECK(std::isfinite(evaluate_potential(p, 5000.0)));
    }
}

TEST_CASE("invalid parameters are rejected") {
    PotentialParams p = potential_from_molecule(h2(), 1, 0.0);
    p.cbar = 2;
    CHECK_THROWS(validate(p));
    p.cbar = 1;
    p.De = -1;
    CHECK_THROWS(validate(p));
}

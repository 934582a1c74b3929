#include <doctest.h>

#include <cmath>
#include <numbers>

#include "constants.hpp"
#include "errors.hpp"

using namespace seelab;
using doctest::Approx;

namespace {

StructuralConstants base() {
    StructuralConstants c;
    c.gamma2 = 1.0;
    c.gamma5 = 1.0;
    c.gamma6 = 1.0;
    c.lambda = 10.0;
    c.gamma4 = 1.0;
    return c;
}

} // namespace

TEST_CASE("unit ball volumes in low dimensions") {
    CHECK(unit_ball_volume(1) == Approx(2.0).epsilon(1e-15));
    CHECK(unit_ball_volume(2) == Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(unit_ball_volume(3) == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(unit_ball_volume(0), ValidationError);
}

TEST_CASE("embedding constants per triple") {
    // 1-D interval: mu_1 = 2, so the gradient triples give 2 / length.
    CHECK(poincare_lambda({TripleTag::H01_L2, 2.0, 1.0, 1}) == Approx(2.0).epsilon(1e-15));
    CHECK(poincare_lambda({TripleTag::W1p_L2, 4.0, 1.0, 1}) == Approx(2.0).epsilon(1e-15));
    CHECK(poincare_lambda({TripleTag::H01_L2, 2.0, 4.0, 1}) == Approx(0.5).epsilon(1e-15));
    // Hoelder constant |O|^{-(p-2)/p} for L^p into L2.
    CHECK(poincare_lambda({TripleTag::Lp_L2, 2.0, 1.0, 1}) == Approx(1.0).epsilon(1e-15));
    CHECK(poincare_lambda({TripleTag::Lp_L2, 4.0, 2.0, 1}) ==
          Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
    // Chain L^p -> L2 -> H^-1 multiplies both factors.
    CHECK(poincare_lambda({TripleTag::Lp_Hminus1, 3.0, 1.0, 1}) ==
          Approx(2.0).epsilon(1e-15));
}

TEST_CASE("c_alpha closed forms and sharpness") {
    CHECK(c_alpha(2.0) == 0.0);
    CHECK(c_alpha(4.0) == Approx(0.25).epsilon(1e-15));
    CHECK(c_alpha(3.0) == Approx(4.0 / 27.0).epsilon(1e-15));
    CHECK_THROWS_AS(c_alpha(1.5), ValidationError);

    for (double alpha : {2.0, 2.5, 3.0, 4.0, 6.0}) {
        const double C = c_alpha(alpha);
        double least_slack = 1e300;
        for (double r = 0.0; r <= 3.0; r += 1e-4) {
            const double slack = C + std::pow(r, alpha) - r * r;
            CHECK(slack >= -1e-12);
            least_slack = std::min(least_slack, slack);
        }
        // minimal C: the bound is tight somewhere on the sampled range
        CHECK(least_slack < 1e-6);
    }
}

TEST_CASE("dissipativity gap ratio") {
    auto c = base();
    const GapResult g = dissipativity_gap(c);
    CHECK(g.holds);
    CHECK(g.gap == Approx(8.0).epsilon(1e-15)); // 10 - (1 + 1)/1
    c.gamma2 = 10.0;
    CHECK_FALSE(dissipativity_gap(c).holds);
}

TEST_CASE("noise threshold closed form") {
    auto c = base();
    CHECK(noise_threshold(c) == Approx(std::sqrt(8.0 / 41.0)).epsilon(1e-12));

    SUBCASE("capped at one") {
        c.lambda = 100.0;
        c.gamma4 = 0.0;
        c.gamma6 = 0.1;
        CHECK(noise_threshold(c) == 1.0);
    }
    SUBCASE("violated gap throws") {
        c.gamma2 = 11.0;
        CHECK_THROWS_AS(noise_threshold(c), PreconditionError);
    }
}

TEST_CASE("drift-strict threshold relaxes the gap") {
    StructuralConstants c;
    c.gamma2 = 1.0;
    c.gamma4 = 2.0;
    c.gamma5 = 2.0 / 3.0;
    c.gamma6 = 1.0;
    c.lambda = 2.0;
    // abstract numerator 4/3 - 1 - 2 < 0, strict numerator 4/3 - 1 = 1/3
    CHECK_THROWS_AS(noise_threshold(c, GapMode::Abstract), PreconditionError);
    CHECK(noise_threshold(c, GapMode::DriftStrict) ==
          Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-12));
}

TEST_CASE("per-model thresholds") {
    CHECK(example_noise_threshold(ExampleModel::ReactionDiffusion, 2.0, 1.0) ==
          Approx(std::sqrt(1.0 / 30.0)).epsilon(1e-12));
    CHECK(example_noise_threshold(ExampleModel::PowerLaw, 1.0, 1.0 / 3.0) ==
          Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-12));
    CHECK(example_noise_threshold(ExampleModel::PLaplace, 1.0, 1.0 / 12.0) ==
          Approx(std::sqrt(1.0 / 48.0)).epsilon(1e-12));
    CHECK(example_noise_threshold(ExampleModel::PorousMedium, 1.0, 1.0 / 3.0, 1.0) ==
          Approx(std::sqrt(1.0 / 12.0)).epsilon(1e-12));

    // each formula names its own admissibility condition
    CHECK_THROWS_AS(example_noise_threshold(ExampleModel::ReactionDiffusion, 2.0, 2.0),
                    PreconditionError);
    CHECK_THROWS_AS(example_noise_threshold(ExampleModel::PLaplace, 1.0, 1.0),
                    PreconditionError);
}

TEST_CASE("sharp Young constant for the h2 term") {
    // alpha = 2 collapses to 1/gamma5
    CHECK(young_h2_constant(2.0 / 3.0, 2.0) == Approx(1.5).epsilon(1e-14));
    CHECK(young_h2_constant(0.5, 2.0) == Approx(2.0).epsilon(1e-14));

    // 2 b r <= gamma5 r^alpha + C b^{alpha/(alpha-1)}, tight at the minimizer
    for (double alpha : {2.0, 3.0, 4.0}) {
        for (double gamma5 : {0.2, 2.0 / 3.0, 1.7}) {
            const double C = young_h2_constant(gamma5, alpha);
            const double beta = alpha / (alpha - 1.0);
            for (double b : {0.1, 1.0, 5.0}) {
                double least = 1e300;
                for (double r = 0.0; r <= 20.0; r += 1e-3) {
                    const double slack =
                        gamma5 * std::pow(r, alpha) + C * std::pow(b, beta) - 2.0 * b * r;
                    CHECK(slack >= -1e-9);
                    least = std::min(least, slack);
                }
                CHECK(least < 0.05 * C * std::pow(b, beta)); // near-equality attained
            }
        }
    }
}

TEST_CASE("structural constant validation") {
    StructuralConstants c;
    CHECK_NOTHROW(validate(c));
    SUBCASE("gamma5 must be positive") {
        c.gamma5 = 0.0;
        CHECK_THROWS_AS(validate(c), ValidationError);
    }
    SUBCASE("alpha at least two") {
        c.alpha = 1.9;
        CHECK_THROWS_AS(validate(c), ValidationError);
    }
    SUBCASE("epsilon in (0,1]") {
        c.epsilon = 0.0;
        CHECK_THROWS_AS(validate(c), ValidationError);
        c.epsilon = 1.5;
        CHECK_THROWS_AS(validate(c), ValidationError);
    }
    SUBCASE("gamma2 positive") {
        c.gamma2 = 0.0;
        CHECK_THROWS_AS(validate(c), ValidationError);
    }
}

TEST_CASE("energy-estimate constants for the reaction-diffusion catalog") {
    StructuralConstants c;
    c.gamma1 = 1.0;
    c.gamma2 = 1.0;
    c.gamma3 = 3.0;
    c.gamma4 = 2.0;
    c.gamma5 = 2.0 / 3.0;
    c.gamma6 = 1.0;
    c.alpha = 2.0;
    c.lambda = 2.0;

    const GronwallConstants k = derived_gronwall_constants(c, GapMode::DriftStrict);
    CHECK(k.kappa == Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(k.denom == Approx(10.0).epsilon(1e-14));
    CHECK(k.bracket == Approx(29.0 / 15.0).epsilon(1e-14));
    CHECK(k.eta1 == Approx(7.0 / 30.0).epsilon(1e-13));
    CHECK(k.eta2 == k.eta1);
    CHECK(k.C0 == Approx(30.0 / 7.0).epsilon(1e-13));
    CHECK(k.Cg == Approx(30.0 / 7.0).epsilon(1e-13));
    CHECK(k.Ch2 == Approx(1.5).epsilon(1e-13));
    CHECK(k.Ch1 == 2.0);
    CHECK(k.C1 == Approx(45.0 / 14.0).epsilon(1e-13));
    CHECK(k.C2 == Approx(30.0 / 7.0).epsilon(1e-13));
    CHECK(k.L == Approx(8.5).epsilon(1e-13));

    // the abstract accounting has no positive gap here
    CHECK_THROWS_AS(derived_gronwall_constants(c, GapMode::Abstract),
                    PreconditionError);
}

TEST_CASE("energy-estimate constants satisfy their defining identities") {
    auto c = base();
    const GronwallConstants k = derived_gronwall_constants(c, GapMode::Abstract);
    CHECK(k.kappa == Approx(10.0 - 1.0 - 1.0).epsilon(1e-14));
    CHECK(k.denom == Approx(41.0).epsilon(1e-14));
    CHECK(k.bracket == Approx(3.0 - 2.0 * 8.0 / 41.0).epsilon(1e-13));
    CHECK(k.C1 == Approx(k.C0 / (c.lambda * c.gamma5)).epsilon(1e-13));
    CHECK(k.C2 == Approx(std::max({k.Cg, k.Ch2, k.Ch1})).epsilon(1e-13));
    CHECK(k.L == Approx(1.0 + k.C1 + k.C2).epsilon(1e-13));
    CHECK(k.eta1 > 0.0);
    CHECK(k.eta2 > 0.0);
}

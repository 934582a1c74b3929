#include "constants.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "errors.hpp"

namespace seelab {

void validate(const StructuralConstants& c) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError(fmt::format("{} must be positive and finite (got {})", name, v));
    };
    if (!(c.gamma1 >= 0.0) || !std::isfinite(c.gamma1))
        throw ValidationError(fmt::format("gamma1 must be nonnegative (got {})", c.gamma1));
    positive(c.gamma2, "gamma2");
    positive(c.gamma5, "gamma5");
    positive(c.gamma6, "gamma6");
    positive(c.lambda, "lambda");
    if (!std::isfinite(c.gamma3))
        throw ValidationError("gamma3 must be finite");
    if (!std::isfinite(c.gamma4))
        throw ValidationError("gamma4 must be finite");
    if (!(c.alpha >= 2.0))
        throw ValidationError(fmt::format("alpha must be >= 2 (got {})", c.alpha));
    if (!(c.epsilon > 0.0 && c.epsilon <= 1.0))
        throw ValidationError(fmt::format("epsilon must lie in (0, 1] (got {})", c.epsilon));
}

void validate(const TripleKind& t) {
    if (t.dim < 1)
        throw ValidationError(fmt::format("triple dimension must be >= 1 (got {})", t.dim));
    if (!(t.domain_length > 0.0))
        throw ValidationError(fmt::format("domain length must be positive (got {})", t.domain_length));
    if (t.tag != TripleTag::H01_L2 && !(t.p >= 2.0))
        throw ValidationError(fmt::format("triple exponent p must be >= 2 (got {})", t.p));
}

double unit_ball_volume(int n) {
    if (n < 1)
        throw ValidationError(fmt::format("unit ball dimension must be >= 1 (got {})", n));
    const double nd = static_cast<double>(n);
    return 2.0 * std::pow(std::numbers::pi, nd / 2.0) / (nd * std::tgamma(nd / 2.0));
}

double poincare_lambda(const TripleKind& t) {
    validate(t);
    const double mu = unit_ball_volume(t.dim);
    const double ell = t.domain_length;
    const double gradient_bound = std::pow(mu / ell, 1.0 / t.dim);
    switch (t.tag) {
    case TripleTag::H01_L2:
    case TripleTag::W1p_L2:
        return gradient_bound;
    case TripleTag::Lp_L2:
        return std::pow(ell, -(t.p - 2.0) / t.p);
    case TripleTag::Lp_Hminus1:
        // L^p -> L2 (Hoelder) composed with L2 -> H^-1 (gradient bound).
        return gradient_bound * std::pow(ell, -(t.p - 2.0) / t.p);
    }
    throw ValidationError("unknown triple tag");
}

double c_alpha(double alpha) {
    if (!(alpha >= 2.0))
        throw ValidationError(fmt::format("c_alpha requires alpha >= 2 (got {})", alpha));
    if (alpha == 2.0) return 0.0;
    // max_{r>=0} (r^2 - r^alpha), attained at r* = (2/alpha)^{1/(alpha-2)}.
    const double rstar_sq = std::pow(2.0 / alpha, 2.0 / (alpha - 2.0));
    return rstar_sq * (alpha - 2.0) / alpha;
}

double c_alpha(const StructuralConstants& c) { return c_alpha(c.alpha); }

GapResult dissipativity_gap(const StructuralConstants& c) {
    validate(c);
    const double gap = c.lambda - (c.gamma2 + std::abs(c.gamma4)) / c.gamma5;
    return {gap > 0.0, gap};
}

double noise_threshold(const StructuralConstants& c) {
    const GapResult g = dissipativity_gap(c);
    if (!g.holds)
        throw PreconditionError(fmt::format(
            "dissipativity gap (H5) violated: (gamma2 + |gamma4|)/gamma5 = {} "
            "must be < lambda = {}",
            (c.gamma2 + std::abs(c.gamma4)) / c.gamma5, c.lambda));
    const double num = c.lambda * c.gamma5 - c.gamma2 - std::abs(c.gamma4);
    const double den = 4.0 * c.lambda * c.gamma6 + std::abs(c.gamma4);
    return std::min(1.0, std::sqrt(num / den));
}

double noise_threshold(const StructuralConstants& c, GapMode mode) {
    if (mode == GapMode::Abstract) return noise_threshold(c);
    validate(c);
    const double num = c.lambda * c.gamma5 - c.gamma2;
    if (!(num > 0.0))
        throw PreconditionError(fmt::format(
            "drift-strict gap violated: lambda*gamma5 - gamma2 = {} must be positive",
            num));
    const double den = 4.0 * c.lambda * c.gamma6 + std::abs(c.gamma4);
    return std::min(1.0, std::sqrt(num / den));
}

double example_noise_threshold(ExampleModel m, double lambda, double gamma2,
                               double beta1) {
    if (!(lambda > 0.0))
        throw ValidationError(fmt::format("lambda must be positive (got {})", lambda));
    if (!(gamma2 > 0.0))
        throw ValidationError(fmt::format("gamma2 must be positive (got {})", gamma2));
    double num = 0.0;
    double den = 0.0;
    switch (m) {
    case ExampleModel::ReactionDiffusion:
        num = (2.0 / 3.0) * lambda - gamma2;
        den = 4.0 * lambda + 2.0;
        if (!(num > 0.0))
            throw PreconditionError(fmt::format(
                "reaction-diffusion threshold requires gamma2 < (2/3)*lambda "
                "(gamma2 = {}, lambda = {})", gamma2, lambda));
        break;
    case ExampleModel::PowerLaw:
        num = (2.0 / 3.0) * lambda - gamma2;
        den = 4.0 * lambda;
        if (!(num > 0.0))
            throw PreconditionError(fmt::format(
                "power-law threshold requires gamma2 < (2/3)*lambda "
                "(gamma2 = {}, lambda = {})", gamma2, lambda));
        break;
    case ExampleModel::PLaplace:
        num = (lambda / 6.0) * std::min(1.0, lambda) - gamma2;
        den = 4.0 * lambda;
        if (!(num > 0.0))
            throw PreconditionError(fmt::format(
                "p-Laplace threshold requires gamma2 < (lambda/6)*min(1, lambda) "
                "(gamma2 = {}, lambda = {})", gamma2, lambda));
        break;
    case ExampleModel::PorousMedium:
        if (!(beta1 > 0.0))
            throw ValidationError(fmt::format("beta1 must be positive (got {})", beta1));
        num = (2.0 / 3.0) * beta1 * lambda - gamma2;
        den = 4.0 * lambda;
        if (!(num > 0.0))
            throw PreconditionError(fmt::format(
                "porous-medium threshold requires gamma2 < (2/3)*beta1*lambda "
                "(gamma2 = {}, beta1 = {}, lambda = {})", gamma2, beta1, lambda));
        break;
    }
    return std::min(1.0, std::sqrt(num / den));
}

double young_h2_constant(double gamma5, double alpha) {
    if (!(gamma5 > 0.0))
        throw ValidationError(fmt::format("gamma5 must be positive (got {})", gamma5));
    if (!(alpha >= 2.0))
        throw ValidationError(fmt::format("alpha must be >= 2 (got {})", alpha));
    const double q = alpha / (alpha - 1.0);
    return ((alpha - 1.0) / alpha) * std::pow(2.0, q) *
           std::pow(alpha * gamma5, -1.0 / (alpha - 1.0));
}

GronwallConstants derived_gronwall_constants(const StructuralConstants& c,
                                             GapMode mode) {
    validate(c);
    GronwallConstants out;
    out.mode = mode;
    const double g4 = std::abs(c.gamma4);
    const double lg5 = c.lambda * c.gamma5;

    out.kappa = (mode == GapMode::Abstract) ? lg5 - c.gamma2 - g4 : lg5 - c.gamma2;
    if (!(out.kappa > 0.0)) {
        if (mode == GapMode::Abstract)
            throw PreconditionError(fmt::format(
                "dissipativity gap (H5) violated: lambda*gamma5 - gamma2 - |gamma4| "
                "= {} must be positive", out.kappa));
        throw PreconditionError(fmt::format(
            "drift-strict gap violated: lambda*gamma5 - gamma2 = {} must be positive",
            out.kappa));
    }

    out.denom = 4.0 * c.lambda * c.gamma6 + g4;
    out.bracket = 3.0 * c.gamma5 - 2.0 * out.kappa * c.gamma6 / out.denom;

    // Drift H-term plus the intensity-weighted diffusion H-term.  In the
    // abstract mode the drift contributes |gamma4| of its own; in the
    // drift-strict mode only the diffusion share (eps^2 <= kappa/denom) is left.
    const double c_h = (mode == GapMode::Abstract)
                           ? g4 + out.kappa * g4 / out.denom
                           : out.kappa * g4 / out.denom;

    // Splitting the remaining margin over the two Young cross terms makes the
    // decay coefficient exactly lambda*gamma5 (see docs/energy_estimate.md).
    const double budget = out.bracket * c.lambda - lg5 - 2.0 * c.gamma2 - c_h;
    if (!(budget > 0.0))
        throw PreconditionError(fmt::format(
            "energy-estimate budget is not positive (got {}); constants too close "
            "to the gap boundary", budget));
    out.eta1 = budget / 2.0;
    out.eta2 = budget / 2.0;

    out.C0 = c.gamma2 * c.gamma2 / out.eta1 + out.bracket * c_alpha(c.alpha);
    out.Cg = 1.0 / out.eta2;
    out.Ch2 = young_h2_constant(c.gamma5, c.alpha);
    out.Ch1 = 2.0;
    out.C1 = out.C0 / lg5;
    out.C2 = std::max({out.Cg, out.Ch2, out.Ch1});
    out.L = 1.0 + out.C1 + out.C2;
    return out;
}

std::string to_string(TripleTag t) {
    switch (t) {
    case TripleTag::H01_L2: return "H01_L2";
    case TripleTag::Lp_L2: return "Lp_L2";
    case TripleTag::W1p_L2: return "W1p_L2";
    case TripleTag::Lp_Hminus1: return "Lp_Hminus1";
    }
    return "?";
}

std::string to_string(ExampleModel m) {
    switch (m) {
    case ExampleModel::ReactionDiffusion: return "reaction_diffusion";
    case ExampleModel::PowerLaw: return "power_law";
    case ExampleModel::PLaplace: return "p_laplace";
    case ExampleModel::PorousMedium: return "porous_medium";
    }
    return "?";
}

} // namespace seelab

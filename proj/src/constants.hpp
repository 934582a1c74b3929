#pragma once

#include <string>

namespace seelab {

/// Which Gelfand triple V in H in V* a model lives on.  The state space H is
/// L2 except for Lp_Hminus1, where H is the discrete H^-1 space.
enum class TripleTag {
    H01_L2,     ///< V = H_0^1,     H = L2
    Lp_L2,      ///< V = L^p,       H = L2
    W1p_L2,     ///< V = W_0^{1,p}, H = L2
    Lp_Hminus1, ///< V = L^p,       H = H^-1
};

struct TripleKind {
    TripleTag tag = TripleTag::H01_L2;
    double p = 2.0;            ///< integrability exponent (>= 2; unused for H01_L2)
    double domain_length = 1.0;///< |O|, measure of the 1-D interval
    int dim = 1;               ///< n in the closed-form embedding constants
};

/// Structural constants of the evolution equation
///   du = (A(t,u) + F(u) + g(t)) dt + eps * G(t,u) dW.
///
/// gamma1: Lipschitz constant of the reaction F
/// gamma2: growth constant, ||F(u)||_H <= gamma2 (1 + ||u||_H)        (H0)
/// gamma3: weak-monotonicity constant                                  (H2)
/// gamma4: H-norm coefficient in the coercivity bound                  (H3)
/// gamma5: V-norm coefficient in the coercivity bound, > 0             (H3)
/// gamma6: growth constant of A into V*                                (H4)
/// alpha : coercivity exponent, >= 2
/// lambda: embedding constant, ||v||_V^2 >= lambda ||v||_H^2
/// epsilon: noise intensity in (0, 1]
struct StructuralConstants {
    double gamma1 = 0.0;
    double gamma2 = 1.0;
    double gamma3 = 0.0;
    double gamma4 = 0.0;
    double gamma5 = 1.0;
    double gamma6 = 1.0;
    double alpha = 2.0;
    double lambda = 1.0;
    double epsilon = 1.0;
};

/// Throws ValidationError when a field is outside its admissible range.
void validate(const StructuralConstants& c);
void validate(const TripleKind& t);

/// Volume of the unit ball in R^n: 2 pi^{n/2} / (n Gamma(n/2)).
/// Throws ValidationError for n < 1.
double unit_ball_volume(int n);

/// Embedding constant lambda for the triple:
///   H01_L2, W1p_L2 : (mu_n / |O|)^{1/n} with mu_n the unit-ball volume
///   Lp_L2          : |O|^{-(p-2)/p}  (Hoelder constant for L^p into L2)
///   Lp_Hminus1     : (mu_n / |O|)^{1/n} * |O|^{-(p-2)/p}, an analytic lower
///                    bound for the chain L^p -> L2 -> H^-1; a sharper
///                    on-grid value comes from certify_lambda_hat().
double poincare_lambda(const TripleKind& t);

/// Minimal C with C + r^alpha >= r^2 for all r >= 0; combined with the
/// embedding this yields C + ||v||_V^alpha >= lambda ||v||_H^2.
/// Returns 0 for alpha = 2; throws for alpha < 2.
/// Closed form for alpha > 2: C = ((alpha-2)/alpha) * (2/alpha)^{2/(alpha-2)}.
double c_alpha(double alpha);
double c_alpha(const StructuralConstants& c);

struct GapResult {
    bool holds = false;
    double gap = 0.0; ///< lambda - (gamma2 + |gamma4|) / gamma5
};

/// Dissipativity gap condition (H5): (gamma2 + |gamma4|)/gamma5 < lambda.
GapResult dissipativity_gap(const StructuralConstants& c);

/// Admissible noise-intensity threshold
///   eps0 = min{1, sqrt((lambda g5 - g2 - |g4|) / (4 lambda g6 + |g4|))}.
/// Requires the (H5) gap to be positive; throws PreconditionError otherwise.
double noise_threshold(const StructuralConstants& c);

/// The four concrete models the laboratory ships.
enum class ExampleModel {
    ReactionDiffusion, ///< A = Laplacian, bounded reaction
    PowerLaw,          ///< A(u) = -u |u|^{p-2}
    PLaplace,          ///< A(u) = div(|grad u|^{p-2} grad u)
    PorousMedium,      ///< A(u) = Laplacian of Psi(u) in H^-1
};

/// Per-model intensity threshold.  `lambda` is the model's embedding
/// constant; `beta1` only matters for the porous-medium model.
///   reaction-diffusion: min{1, sqrt(((2/3) l - g2) / (4 l + 2))},  g2 < (2/3) l
///   power-law        : min{1, sqrt(((2/3) l - g2) / (4 l))},       g2 < (2/3) l
///   p-Laplace        : min{1, sqrt(((l/6) min{1,l} - g2)/(4 l))},  g2 < (l/6) min{1,l}
///   porous medium    : min{1, sqrt(((2/3) b1 l - g2) / (4 l))},    g2 < (2/3) b1 l
/// Throws PreconditionError naming the violated condition.
double example_noise_threshold(ExampleModel m, double lambda, double gamma2,
                               double beta1 = 1.0);

/// Sharp Young constant C with 2 |b| r <= gamma5 r^alpha + C |b|^{alpha/(alpha-1)}
/// for all r, b >= 0:  C = ((alpha-1)/alpha) * 2^{alpha/(alpha-1)} *
/// (alpha gamma5)^{-1/(alpha-1)}.  Used in the diffusion growth bound.
double young_h2_constant(double gamma5, double alpha);

/// How the drift's H-norm contribution is budgeted in the energy estimate.
/// Abstract uses (H3) as declared (positive gamma4 term from the drift).
/// DriftStrict applies when the drift alone satisfies (H3) with gamma4 = 0
/// (true for all four catalog models); the gap then relaxes to
/// lambda gamma5 - gamma2 > 0.
enum class GapMode { Abstract, DriftStrict };

/// Intensity threshold for the selected gap mode.  Abstract reproduces
/// noise_threshold(c); DriftStrict uses the relaxed numerator
/// lambda gamma5 - gamma2 over the same denominator.
double noise_threshold(const StructuralConstants& c, GapMode mode);

/// Explicit constants of the mean-square energy estimate
///   d/dr E||u||^2 + lambda g5 E||u||^2 <=
///       C0 + Cg ||g(r)||^2 + Ch2 |h2(r)|^{alpha/(alpha-1)} + Ch1 |h1(r)|,
/// valid for eps <= the matching intensity threshold.  See
/// docs/energy_estimate.md for the derivation; every step is unit-tested.
struct GronwallConstants {
    GapMode mode = GapMode::Abstract;
    double kappa = 0.0;  ///< gap numerator: lambda g5 - g2 - |g4| (or - g2 only)
    double denom = 0.0;  ///< 4 lambda g6 + |g4|
    double bracket = 0.0;///< B = 3 g5 - 2 kappa g6 / denom
    double eta1 = 0.0;   ///< Young parameter, reaction cross term
    double eta2 = 0.0;   ///< Young parameter, forcing cross term
    double C0 = 0.0;
    double Cg = 0.0;
    double Ch2 = 0.0;
    double Ch1 = 0.0;
    double C1 = 0.0;     ///< C0 / (lambda g5)
    double C2 = 0.0;     ///< max(Cg, Ch2, Ch1)
    double L = 0.0;      ///< 1 + C1 + C2, the absorbing-radius scale
};

/// Derive the energy-estimate constants.  Throws PreconditionError when the
/// selected gap is not positive.
GronwallConstants derived_gronwall_constants(const StructuralConstants& c,
                                             GapMode mode);

std::string to_string(TripleTag t);
std::string to_string(ExampleModel m);

} // namespace seelab

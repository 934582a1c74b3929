#pragma once

#include "constants.hpp"
#include "grid.hpp"

namespace seelab {

enum class ModelKind { Laplacian, PowerLaw, PLaplace, PorousMedium };

/// Reaction term F applied nodewise.
///   Zero   F(s) = 0
///   Tanh   F(s) = gamma2 tanh(s)   (bounded, Lipschitz constant gamma2)
///   Linear F(s) = slope * s        (|slope| <= min(gamma1, gamma2) enforced)
struct ReactionSpec {
    enum class Form { Zero, Tanh, Linear };
    Form form = Form::Zero;
    double gamma1 = 0.0; ///< declared Lipschitz constant
    double gamma2 = 1.0; ///< declared growth constant
    double slope = 0.0;  ///< Linear only
};

/// Porous-medium nonlinearity Psi(s) = scale * s |s|^{p-2}, together with the
/// declared constants of the bounds s Psi(s) >= beta1 |s|^p - beta2 and
/// |Psi(s)| <= beta3 |s|^{p-1} + beta4.  For the pure power law
/// beta = (scale, 0, scale, 0) is exact.
struct PsiParams {
    double scale = 1.0;
    double beta1 = 1.0;
    double beta2 = 0.0;
    double beta3 = 1.0;
    double beta4 = 0.0;
};

/// Spatial drift A with its Gelfand triple:
///   Laplacian    A(u) = u_xx                          on H01_L2
///   PowerLaw     A(u) = -u |u|^{p-2}                  on Lp_L2
///   PLaplace     A(u) = (|u_x|^{p-2} u_x)_x           on W1p_L2
///   PorousMedium A(u) = (Psi(u))_xx                   on Lp_Hminus1
struct ModelSpec {
    ModelKind kind = ModelKind::Laplacian;
    double p = 2.0;
    PsiParams psi;
    TripleKind triple;
    ReactionSpec reaction;

    /// Coercivity exponent the model realizes: 2 for Laplacian, p otherwise.
    double natural_alpha() const;
};

/// Build a model with the triple implied by its kind.  Validates ranges.
ModelSpec make_model(ModelKind kind, double p, double domain_length,
                     ReactionSpec reaction = {}, PsiParams psi = {});

double psi_value(const PsiParams& psi, double p, double s);

/// Squared H-norm of the state: discrete L2, or discrete H^-1 for Lp_Hminus1.
double h_norm_sq(const State& s, const TripleKind& t);

/// H inner product matching h_norm_sq.
double h_inner(const State& a, const State& b, const TripleKind& t);

/// ||u||_V^alpha at the model's natural exponent:
///   H01_L2  sum h |Du|^2, W1p_L2  sum h |Du|^p  (forward differences with
///   ghost zeros), Lp_*  sum h |u|^p.
double v_norm_alpha(const State& s, const ModelSpec& m);

/// Nodewise drift values A(u) (second differences use ghost zeros).
State apply_drift(const State& s, const ModelSpec& m);

/// Nodewise reaction F(u).
State apply_reaction(const State& s, const ReactionSpec& r);
double reaction_value(const ReactionSpec& r, double s);

/// Duality pairing <A(v), w> of the drift against a test state, evaluated in
/// the form that is exact for the triple (gradient form for H01/W1p, H^-1
/// realization -h sum Psi(v) w for the porous medium).
double drift_pairing(const State& v, const State& w, const ModelSpec& m);

/// V-norm of a test state for the sampled dual-norm estimates.
double test_v_norm(const State& w, const ModelSpec& m);

} // namespace seelab

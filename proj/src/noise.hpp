#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "constants.hpp"
#include "forcing.hpp"
#include "grid.hpp"
#include "models.hpp"

namespace seelab {

/// Cylindrical Wiener noise truncated to `modes` sine modes with a diffusion
/// operator from a small catalog:
///   Zero                G = 0
///   ScalarMultiplicative G(u) dW = sigma[0] * u * dbeta_1         (one mode)
///   DiagonalNemytskii   G(u) e_k = sigma[k-1] * tanh(u) nodewise
///   Additive            G e_k = sigma[k-1] * e_k
struct NoiseSpec {
    enum class Kind { Zero, ScalarMultiplicative, DiagonalNemytskii, Additive };

    Kind kind = Kind::Zero;
    int modes = 1;
    std::vector<double> sigma; ///< per-mode amplitudes, size >= modes
    std::uint64_t master_seed = 0;

    double sigma_at(int k) const { return sigma[static_cast<size_t>(k)]; }
    static NoiseSpec zero();
    /// sigma_k = base * k^{-decay}, k = 1..modes.
    static NoiseSpec make(Kind kind, int modes, double base, double decay,
                          std::uint64_t seed);
};

void validate(const NoiseSpec& n);

/// Wiener increments (variance dt) for one step addressed by its absolute
/// index on the dt-lattice.  A pure function of (master_seed, path,
/// step_index, mode): identical regardless of evaluation order.
void wiener_step(const NoiseSpec& n, long long path_id, long long step_index,
                 double dt, std::span<double> out);

/// steps x modes increment table for the window starting at t0; step index
/// is taken on the absolute lattice k = llround(t0/dt) + j.
std::vector<std::vector<double>> wiener_increments(const NoiseSpec& n, double t0,
                                                   double dt, long long steps,
                                                   long long path_id);

/// Accumulated noise action sum_k (G(t,u) e_k) dW_k.
State apply_diffusion(const State& u, double t, std::span<const double> dW,
                      const NoiseSpec& n);

/// Squared Hilbert-Schmidt norm sum_k ||G(t,u) e_k||_H^2 in the triple's H.
double hs_norm_sq(const State& u, double t, const NoiseSpec& n, const TripleKind& triple);

struct BoundCheck {
    bool pass = false;
    double margin = 0.0; ///< right side minus left side
};

/// Diffusion growth bound
///   ||G(t,u)||_HS^2 <= gamma4 ||u||_H^2 + 2 gamma6 ||u||_V^alpha
///                      + C_{gamma5,alpha} |h2(t)|^{alpha/(alpha-1)} + h1(t).
BoundCheck check_diffusion_bound(const State& u, double t, const NoiseSpec& n,
                                 const StructuralConstants& c,
                                 const ForcingProfile& profile, const ModelSpec& m);

} // namespace seelab

#pragma once

#include <cstdint>
#include <vector>

#include "forcing.hpp"
#include "models.hpp"
#include "noise.hpp"

namespace seelab {

/// Time stepping scheme for the drift.  SemiImplicit treats the Laplacian
/// implicitly (one tridiagonal solve per step) and is unconditionally stable
/// for that drift; everything else stays explicit.
enum class Scheme { Explicit, SemiImplicit };

/// Euler-Maruyama configuration on the absolute step lattice t_k = k dt.
/// Both window endpoints must lie on the lattice; Wiener increments are
/// addressed by the absolute index k, so a path restarted at an interior
/// lattice time reuses exactly the increments it would have seen in one
/// uninterrupted run (the discrete cocycle property, bitwise).
struct SimConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::Explicit;
    double t_start = 0.0;
    double t_end = 1.0;
    double epsilon = 1.0;        ///< noise intensity factor in front of G
    long long record_every = 1;  ///< keep every k-th lattice point (ends always kept)
    bool record_states = false;  ///< store full nodal states, not just norms
    double blow_up_threshold = 1e12; ///< sup-norm limit before BlowUpError
};

/// Throws ValidationError on inconsistent windows, off-lattice endpoints,
/// an explicit Laplacian step beyond the h^2/2 stability limit, or a
/// semi-implicit request for a drift without a linear solve.
void validate_sim(const SimConfig& sim, const ModelSpec& m, const Grid& g);

struct Trajectory {
    std::vector<double> times;
    std::vector<double> h_norm_sq;   ///< ||u(t)||_H^2 in the model's triple
    std::vector<State> states;       ///< only populated when record_states
    double max_drift_ratio = 0.0;    ///< max over steps of dt |drift|_inf / (1 + |u|_inf)
    long long steps = 0;
};

/// One Euler-Maruyama step from absolute lattice index k (time k dt).
/// dW holds the increments for this step (variance dt each).
State em_step(const State& u, long long k, const ModelSpec& m,
              const NoiseSpec& noise, const ForcingProfile& profile,
              const SimConfig& sim, std::span<const double> dW,
              double* drift_ratio = nullptr);

/// Integrate one path over [t_start, t_end] from the given initial state.
/// Throws BlowUpError (with step, time and path id) when the state leaves
/// the representable range.
Trajectory integrate_path(const State& u0, const ModelSpec& m,
                          const NoiseSpec& noise, const ForcingProfile& profile,
                          const SimConfig& sim, long long path_id);

} // namespace seelab

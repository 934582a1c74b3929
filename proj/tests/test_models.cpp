#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "grid.hpp"
#include "models.hpp"
#include "rng.hpp"

using namespace seelab;
using doctest::Approx;

namespace {

State random_state(const Grid& g, std::uint64_t tag) {
    State s(g);
    for (int i = 0; i < g.n; ++i)
        s[i] = rng::standard_normal(5, rng::Domain::InitialState, tag,
                                    static_cast<std::uint64_t>(i), 0);
    return s;
}

} // namespace

TEST_CASE("model construction picks the matching triple") {
    CHECK(make_model(ModelKind::Laplacian, 2.0, 1.0).triple.tag == TripleTag::H01_L2);
    CHECK(make_model(ModelKind::PowerLaw, 4.0, 1.0).triple.tag == TripleTag::Lp_L2);
    CHECK(make_model(ModelKind::PLaplace, 4.0, 1.0).triple.tag == TripleTag::W1p_L2);
    CHECK(make_model(ModelKind::PorousMedium, 3.0, 1.0).triple.tag ==
          TripleTag::Lp_Hminus1);
    CHECK_THROWS_AS(make_model(ModelKind::PowerLaw, 1.5, 1.0), ValidationError);
    CHECK_THROWS_AS(make_model(ModelKind::PLaplace, 4.0, 0.0), ValidationError);
}

TEST_CASE("coercivity exponents") {
    CHECK(make_model(ModelKind::Laplacian, 2.0, 1.0).natural_alpha() == 2.0);
    CHECK(make_model(ModelKind::PowerLaw, 4.0, 1.0).natural_alpha() == 4.0);
    CHECK(make_model(ModelKind::PLaplace, 3.0, 1.0).natural_alpha() == 3.0);
    CHECK(make_model(ModelKind::PorousMedium, 3.0, 1.0).natural_alpha() == 3.0);
}

TEST_CASE("Laplacian drift acts as minus the second-difference operator") {
    const Grid g = Grid::make(31, 1.0);
    const auto m = make_model(ModelKind::Laplacian, 2.0, 1.0);
    for (int k : {1, 2, 5}) {
        const double lk = laplacian_eigenvalue(g, k);
        const State ek = sine_mode(g, k);
        const State Aek = apply_drift(ek, m);
        for (int i = 0; i < g.n; ++i)
            CHECK(Aek[i] == Approx(-lk * ek[i]).epsilon(1e-10).scale(1.0));
        CHECK(drift_pairing(ek, ek, m) == Approx(-lk).epsilon(1e-10));
    }
}

TEST_CASE("Laplacian pairing equals the negative gradient form") {
    const Grid g = Grid::make(16, 2.0);
    const auto m = make_model(ModelKind::Laplacian, 2.0, 2.0);
    const State v = random_state(g, 1);
    const State w = random_state(g, 2);
    // forward differences with ghost zeros at both walls
    const double h = g.spacing();
    double grad_form = 0.0;
    for (int i = 0; i <= g.n; ++i) {
        const double dv = ((i < g.n ? v[i] : 0.0) - (i > 0 ? v[i - 1] : 0.0)) / h;
        const double dw = ((i < g.n ? w[i] : 0.0) - (i > 0 ? w[i - 1] : 0.0)) / h;
        grad_form += h * dv * dw;
    }
    CHECK(drift_pairing(v, w, m) == Approx(-grad_form).epsilon(1e-10));
    CHECK(drift_pairing(v, w, m) == Approx(drift_pairing(w, v, m)).epsilon(1e-12));
    CHECK(drift_pairing(v, v, m) == Approx(-v_norm_alpha(v, m)).epsilon(1e-10));
}

TEST_CASE("power-law drift is nodewise and exactly integrable") {
    const Grid g = Grid::make(9, 1.0);
    const auto m = make_model(ModelKind::PowerLaw, 4.0, 1.0);
    State v(g);
    for (int i = 0; i < g.n; ++i) v[i] = 0.3 * (i - 4);
    const State Av = apply_drift(v, m);
    for (int i = 0; i < g.n; ++i)
        CHECK(Av[i] == Approx(-v[i] * std::pow(std::fabs(v[i]), 2.0)).epsilon(1e-14));
    // <A(v), v> = -sum h |v|^p = -||v||_V^alpha
    CHECK(drift_pairing(v, v, m) == Approx(-v_norm_alpha(v, m)).epsilon(1e-13));
}

TEST_CASE("p-Laplacian reduces to the Laplacian at p = 2") {
    const Grid g = Grid::make(17, 1.0);
    const auto pl = make_model(ModelKind::PLaplace, 2.0, 1.0);
    const auto la = make_model(ModelKind::Laplacian, 2.0, 1.0);
    const State v = random_state(g, 3);
    const State a = apply_drift(v, pl);
    const State b = apply_drift(v, la);
    for (int i = 0; i < g.n; ++i) CHECK(a[i] == Approx(b[i]).epsilon(1e-11).scale(1.0));
    CHECK(drift_pairing(v, v, pl) == Approx(drift_pairing(v, v, la)).epsilon(1e-12));
}

TEST_CASE("p-Laplacian pairing matches the gradient form at p = 4") {
    const Grid g = Grid::make(12, 1.0);
    const auto m = make_model(ModelKind::PLaplace, 4.0, 1.0);
    const State v = random_state(g, 4);
    const double h = g.spacing();
    double form = 0.0;
    for (int i = 0; i <= g.n; ++i) {
        const double dv = ((i < g.n ? v[i] : 0.0) - (i > 0 ? v[i - 1] : 0.0)) / h;
        form += h * std::pow(std::fabs(dv), 4.0);
    }
    CHECK(v_norm_alpha(v, m) == Approx(form).epsilon(1e-12));
    CHECK(drift_pairing(v, v, m) == Approx(-form).epsilon(1e-11));
}

TEST_CASE("porous-medium nonlinearity and H^-1 pairing") {
    CHECK(psi_value({0.5, 1, 0, 1, 0}, 3.0, 2.0) == Approx(2.0).epsilon(1e-14));
    CHECK(psi_value({1.0, 1, 0, 1, 0}, 3.0, -2.0) == Approx(-4.0).epsilon(1e-14));

    const Grid g = Grid::make(15, 1.0);
    const auto m = make_model(ModelKind::PorousMedium, 3.0, 1.0);
    const State v = random_state(g, 6);
    // <Delta Psi(v), v>_{H^-1} collapses to -h sum Psi(v) v = -||v||_p^p
    const double h = g.spacing();
    double pair = 0.0;
    for (int i = 0; i < g.n; ++i) pair -= h * psi_value(m.psi, m.p, v[i]) * v[i];
    CHECK(drift_pairing(v, v, m) == Approx(pair).epsilon(1e-12));
    CHECK(drift_pairing(v, v, m) == Approx(-v_norm_alpha(v, m)).epsilon(1e-12));

    // state norm for this triple is the discrete H^-1 norm
    CHECK(h_norm_sq(v, m.triple) == Approx(hminus1_norm_sq(v)).epsilon(1e-13));
    const State w = random_state(g, 7);
    CHECK(h_inner(v, w, m.triple) == Approx(hminus1_inner(v, w)).epsilon(1e-12));
}

TEST_CASE("H quantities for L2 triples") {
    const Grid g = Grid::make(10, 1.0);
    const auto m = make_model(ModelKind::PowerLaw, 4.0, 1.0);
    const State v = random_state(g, 8);
    const State w = random_state(g, 9);
    CHECK(h_norm_sq(v, m.triple) == Approx(l2_norm_sq(v)).epsilon(1e-14));
    CHECK(h_inner(v, w, m.triple) == Approx(l2_inner(v, w)).epsilon(1e-14));
    CHECK(h_inner(v, v, m.triple) == Approx(h_norm_sq(v, m.triple)).epsilon(1e-14));
}

TEST_CASE("reaction forms") {
    ReactionSpec tanh_r;
    tanh_r.form = ReactionSpec::Form::Tanh;
    tanh_r.gamma1 = 2.0;
    tanh_r.gamma2 = 2.0;
    CHECK(reaction_value(tanh_r, 0.5) == Approx(2.0 * std::tanh(0.5)).epsilon(1e-14));
    CHECK(reaction_value(tanh_r, 0.0) == 0.0);

    ReactionSpec lin;
    lin.form = ReactionSpec::Form::Linear;
    lin.gamma1 = 1.0;
    lin.gamma2 = 1.0;
    lin.slope = -0.5;
    CHECK(reaction_value(lin, 3.0) == Approx(-1.5).epsilon(1e-14));

    // the linear slope may not exceed the declared constants
    lin.slope = 2.0;
    CHECK_THROWS_AS(make_model(ModelKind::Laplacian, 2.0, 1.0, lin), ValidationError);

    const Grid g = Grid::make(5, 1.0);
    State v(g);
    for (int i = 0; i < g.n; ++i) v[i] = i - 2.0;
    const State Fv = apply_reaction(v, tanh_r);
    for (int i = 0; i < g.n; ++i)
        CHECK(Fv[i] == Approx(2.0 * std::tanh(v[i])).epsilon(1e-14).scale(1.0));
}

TEST_CASE("test-pool V-norms agree with the coercivity norm") {
    const Grid g = Grid::make(13, 1.0);
    const State v = random_state(g, 10);
    SUBCASE("gradient triple, quadratic exponent") {
        const auto m = make_model(ModelKind::Laplacian, 2.0, 1.0);
        CHECK(test_v_norm(v, m) * test_v_norm(v, m) ==
              Approx(v_norm_alpha(v, m)).epsilon(1e-12));
    }
    SUBCASE("Lp triple") {
        const auto m = make_model(ModelKind::PowerLaw, 4.0, 1.0);
        CHECK(std::pow(test_v_norm(v, m), 4.0) ==
              Approx(v_norm_alpha(v, m)).epsilon(1e-12));
    }
}

#include "models.hpp"

#include <cmath>
#include <fmt/format.h>

#include "errors.hpp"

namespace seelab {

namespace {

// signed power s |s|^{e-1}, continuous at 0 for e >= 1
double spow(double s, double e) {
    if (s == 0.0) return 0.0;
    return (s > 0.0 ? 1.0 : -1.0) * std::pow(std::abs(s), e);
}

TripleTag triple_for(ModelKind kind) {
    switch (kind) {
    case ModelKind::Laplacian: return TripleTag::H01_L2;
    case ModelKind::PowerLaw: return TripleTag::Lp_L2;
    case ModelKind::PLaplace: return TripleTag::W1p_L2;
    case ModelKind::PorousMedium: return TripleTag::Lp_Hminus1;
    }
    return TripleTag::H01_L2;
}

} // namespace

double ModelSpec::natural_alpha() const {
    return kind == ModelKind::Laplacian ? 2.0 : p;
}

ModelSpec make_model(ModelKind kind, double p, double domain_length,
                     ReactionSpec reaction, PsiParams psi) {
    if (kind != ModelKind::Laplacian && !(p >= 2.0))
        throw ValidationError(fmt::format("model exponent p must be >= 2 (got {})", p));
    if (kind == ModelKind::PorousMedium) {
        if (!(psi.scale > 0.0))
            throw ValidationError(fmt::format("psi scale must be positive (got {})", psi.scale));
        if (!(psi.beta1 > 0.0) || !(psi.beta3 > 0.0) || psi.beta2 < 0.0 || psi.beta4 < 0.0)
            throw ValidationError("psi bounds need beta1, beta3 > 0 and beta2, beta4 >= 0");
    }
    if (reaction.form == ReactionSpec::Form::Linear &&
        std::abs(reaction.slope) > std::min(reaction.gamma1, reaction.gamma2))
        throw ValidationError(fmt::format(
            "linear reaction slope {} exceeds min(gamma1, gamma2) = {}",
            reaction.slope, std::min(reaction.gamma1, reaction.gamma2)));

    ModelSpec m;
    m.kind = kind;
    m.p = (kind == ModelKind::Laplacian) ? 2.0 : p;
    m.psi = psi;
    m.reaction = reaction;
    m.triple = TripleKind{triple_for(kind), m.p, domain_length, 1};
    validate(m.triple);
    return m;
}

double psi_value(const PsiParams& psi, double p, double s) {
    return psi.scale * spow(s, p - 1.0);
}

double h_norm_sq(const State& s, const TripleKind& t) {
    if (t.tag == TripleTag::Lp_Hminus1) return hminus1_norm_sq(s);
    return l2_norm_sq(s);
}

double h_inner(const State& a, const State& b, const TripleKind& t) {
    if (t.tag == TripleTag::Lp_Hminus1) return hminus1_inner(a, b);
    return l2_inner(a, b);
}

double v_norm_alpha(const State& s, const ModelSpec& m) {
    const double h = s.grid.spacing();
    const int n = s.size();
    double acc = 0.0;
    switch (m.kind) {
    case ModelKind::Laplacian:
        for (int i = 0; i <= n; ++i) {
            const double a = (i > 0) ? s[i - 1] : 0.0;
            const double b = (i < n) ? s[i] : 0.0;
            const double d = (b - a) / h;
            acc += d * d;
        }
        return h * acc;
    case ModelKind::PLaplace:
        for (int i = 0; i <= n; ++i) {
            const double a = (i > 0) ? s[i - 1] : 0.0;
            const double b = (i < n) ? s[i] : 0.0;
            acc += std::pow(std::abs((b - a) / h), m.p);
        }
        return h * acc;
    case ModelKind::PowerLaw:
    case ModelKind::PorousMedium:
        for (int i = 0; i < n; ++i) acc += std::pow(std::abs(s[i]), m.p);
        return h * acc;
    }
    return 0.0;
}

State apply_drift(const State& s, const ModelSpec& m) {
    const double h = s.grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    const int n = s.size();
    State out(s.grid);
    switch (m.kind) {
    case ModelKind::Laplacian:
        for (int i = 0; i < n; ++i) {
            const double left = (i > 0) ? s[i - 1] : 0.0;
            const double right = (i + 1 < n) ? s[i + 1] : 0.0;
            out[i] = (left - 2.0 * s[i] + right) * inv_h2;
        }
        return out;
    case ModelKind::PowerLaw:
        for (int i = 0; i < n; ++i) out[i] = -spow(s[i], m.p - 1.0);
        return out;
    case ModelKind::PLaplace: {
        // flux at the n+1 cell faces, then its backward difference
        std::vector<double> flux(static_cast<size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const double a = (i > 0) ? s[i - 1] : 0.0;
            const double b = (i < n) ? s[i] : 0.0;
            flux[static_cast<size_t>(i)] = spow((b - a) / h, m.p - 1.0);
        }
        for (int i = 0; i < n; ++i)
            out[i] = (flux[static_cast<size_t>(i) + 1] - flux[static_cast<size_t>(i)]) / h;
        return out;
    }
    case ModelKind::PorousMedium:
        for (int i = 0; i < n; ++i) {
            const double left = (i > 0) ? psi_value(m.psi, m.p, s[i - 1]) : 0.0;
            const double right = (i + 1 < n) ? psi_value(m.psi, m.p, s[i + 1]) : 0.0;
            out[i] = (left - 2.0 * psi_value(m.psi, m.p, s[i]) + right) * inv_h2;
        }
        return out;
    }
    return out;
}

double reaction_value(const ReactionSpec& r, double s) {
    switch (r.form) {
    case ReactionSpec::Form::Zero: return 0.0;
    case ReactionSpec::Form::Tanh: return r.gamma2 * std::tanh(s);
    case ReactionSpec::Form::Linear: return r.slope * s;
    }
    return 0.0;
}

State apply_reaction(const State& s, const ReactionSpec& r) {
    State out(s.grid);
    if (r.form == ReactionSpec::Form::Zero) return out;
    for (int i = 0; i < s.size(); ++i) out[i] = reaction_value(r, s[i]);
    return out;
}

double drift_pairing(const State& v, const State& w, const ModelSpec& m) {
    const double h = v.grid.spacing();
    const int n = v.size();
    double acc = 0.0;
    switch (m.kind) {
    case ModelKind::Laplacian:
        for (int i = 0; i <= n; ++i) {
            const double dv = (((i < n) ? v[i] : 0.0) - ((i > 0) ? v[i - 1] : 0.0)) / h;
            const double dw = (((i < n) ? w[i] : 0.0) - ((i > 0) ? w[i - 1] : 0.0)) / h;
            acc += dv * dw;
        }
        return -h * acc;
    case ModelKind::PLaplace:
        for (int i = 0; i <= n; ++i) {
            const double dv = (((i < n) ? v[i] : 0.0) - ((i > 0) ? v[i - 1] : 0.0)) / h;
            const double dw = (((i < n) ? w[i] : 0.0) - ((i > 0) ? w[i - 1] : 0.0)) / h;
            acc += spow(dv, m.p - 1.0) * dw;
        }
        return -h * acc;
    case ModelKind::PowerLaw:
        for (int i = 0; i < n; ++i) acc += spow(v[i], m.p - 1.0) * w[i];
        return -h * acc;
    case ModelKind::PorousMedium:
        for (int i = 0; i < n; ++i) acc += psi_value(m.psi, m.p, v[i]) * w[i];
        return -h * acc;
    }
    return 0.0;
}

double test_v_norm(const State& w, const ModelSpec& m) {
    return std::pow(v_norm_alpha(w, m), 1.0 / m.natural_alpha());
}

} // namespace seelab

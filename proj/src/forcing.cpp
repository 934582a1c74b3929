#include "forcing.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace seelab {

double ScalarSignal::operator()(double t) const {
    switch (form) {
    case Form::Zero:
        return 0.0;
    case Form::Constant:
        return value;
    case Form::Exponential:
        return value * std::exp(rate * t);
    case Form::Polynomial:
        return value * std::pow(1.0 + std::abs(t), degree);
    case Form::CompactSupport:
        return (t >= lo && t <= hi) ? value : 0.0;
    case Form::Table: {
        if (table.empty() || t < table.front().first || t > table.back().first)
            return 0.0;
        auto it = std::lower_bound(table.begin(), table.end(), t,
                                   [](const auto& p, double x) { return p.first < x; });
        if (it == table.begin()) return it->second;
        const auto [t1, v1] = *(it - 1);
        const auto [t2, v2] = *it;
        if (t2 == t1) return v2;
        const double w = (t - t1) / (t2 - t1);
        return v1 + w * (v2 - v1);
    }
    }
    return 0.0;
}

ScalarSignal ScalarSignal::constant(double c) {
    ScalarSignal s;
    s.form = Form::Constant;
    s.value = c;
    return s;
}

ScalarSignal ScalarSignal::exponential(double c, double r) {
    ScalarSignal s;
    s.form = Form::Exponential;
    s.value = c;
    s.rate = r;
    return s;
}

ScalarSignal ScalarSignal::polynomial(double c, double d) {
    if (!(d >= 0.0))
        throw ValidationError(fmt::format("polynomial signal degree must be >= 0 (got {})", d));
    ScalarSignal s;
    s.form = Form::Polynomial;
    s.value = c;
    s.degree = d;
    return s;
}

ScalarSignal ScalarSignal::compact(double c, double lo, double hi) {
    if (!(lo <= hi))
        throw ValidationError(fmt::format("compact support window [{}, {}] is empty", lo, hi));
    ScalarSignal s;
    s.form = Form::CompactSupport;
    s.value = c;
    s.lo = lo;
    s.hi = hi;
    return s;
}

ScalarSignal ScalarSignal::from_table(std::vector<std::pair<double, double>> pts) {
    if (pts.empty())
        throw ValidationError("tabulated signal needs at least one point");
    std::sort(pts.begin(), pts.end());
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].first == pts[i - 1].first)
            throw ValidationError(fmt::format("tabulated signal has duplicate time {}", pts[i].first));
    ScalarSignal s;
    s.form = Form::Table;
    s.table = std::move(pts);
    return s;
}

ScalarSignal ScalarSignal::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError(fmt::format("cannot open signal table '{}'", path));
    std::vector<std::pair<double, double>> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t = 0.0, v = 0.0;
        if (!(row >> t >> v))
            throw ValidationError(fmt::format("{}:{}: expected 'time,value'", path, lineno));
        pts.emplace_back(t, v);
    }
    return from_table(std::move(pts));
}

std::optional<double> signal_support_lower(const ScalarSignal& f) {
    switch (f.form) {
    case ScalarSignal::Form::Zero:
        return std::numeric_limits<double>::infinity();
    case ScalarSignal::Form::CompactSupport:
        return f.lo;
    case ScalarSignal::Form::Table:
        return f.table.front().first;
    default:
        return std::nullopt;
    }
}

double signal_tail_bound(const ScalarSignal& f, double T, double decay, double q) {
    if (!(decay > 0.0))
        throw ValidationError(fmt::format("tail bound needs positive decay (got {})", decay));
    if (!(q >= 1.0))
        throw ValidationError(fmt::format("tail bound needs exponent q >= 1 (got {})", q));

    const double cq = std::pow(std::abs(f.value), q);
    switch (f.form) {
    case ScalarSignal::Form::Zero:
        return 0.0;
    case ScalarSignal::Form::Constant:
        return cq * std::exp(decay * T) / decay;
    case ScalarSignal::Form::Exponential: {
        const double r = decay + q * f.rate;
        if (!(r > 0.0))
            throw DivergenceError(fmt::format(
                "tail integral diverges: exponential signal rate {} with decay {} "
                "and exponent {} gives combined rate {} <= 0",
                f.rate, decay, q, r));
        return cq * std::exp(r * T) / r;
    }
    case ScalarSignal::Form::Polynomial: {
        const double m = q * f.degree;
        if (m == 0.0) return cq * std::exp(decay * T) / decay;
        // (1+u)^m <= M e^{(decay/2) u} for u >= 0 with M at u* = max(0, 2m/decay - 1).
        const double ustar = std::max(0.0, 2.0 * m / decay - 1.0);
        const double M = std::pow(1.0 + ustar, m) * std::exp(-0.5 * decay * ustar);
        const double negT = std::min(T, 0.0);
        double bound = cq * M * (2.0 / decay) * std::exp(0.5 * decay * negT);
        if (T > 0.0) // crude rectangle on [0, T]; only the ordering matters here
            bound += cq * T * std::exp(decay * T) * std::pow(1.0 + T, m);
        return bound;
    }
    case ScalarSignal::Form::CompactSupport: {
        if (T <= f.lo) return 0.0;
        const double top = std::min(T, f.hi);
        return cq * (std::exp(decay * top) - std::exp(decay * f.lo)) / decay;
    }
    case ScalarSignal::Form::Table: {
        const double t0 = f.table.front().first;
        if (T <= t0) return 0.0;
        double vmax = 0.0;
        for (const auto& [t, v] : f.table) vmax = std::max(vmax, std::abs(v));
        const double top = std::min(T, f.table.back().first);
        return std::pow(vmax, q) * (std::exp(decay * top) - std::exp(decay * t0)) / decay;
    }
    }
    return 0.0;
}

double ForcingProfile::g_norm_sq(double t) const {
    if (norm_sq_mode) return std::abs(g(t));
    if (shape == Shape::Zero) return 0.0;
    const double e = g(t);
    return e * e * shape_norm_sq;
}

bool ForcingProfile::is_zero() const {
    auto dead = [](const ScalarSignal& s) {
        return s.form == ScalarSignal::Form::Zero || s.value == 0.0;
    };
    const bool g_dead = dead(g) || (!norm_sq_mode && (shape == Shape::Zero || shape_norm_sq == 0.0));
    return g_dead && dead(h1) && dead(h2);
}

ForcingProfile ForcingProfile::zero() { return ForcingProfile{}; }

double shape_norm_sq_on_grid(ForcingProfile::Shape shape, const Grid& g) {
    switch (shape) {
    case ForcingProfile::Shape::Zero:
        return 0.0;
    case ForcingProfile::Shape::Uniform: {
        State ones(g);
        for (double& v : ones.u) v = 1.0;
        return l2_norm_sq(ones);
    }
    case ForcingProfile::Shape::FirstMode:
        return l2_norm_sq(sine_mode(g, 1));
    }
    return 0.0;
}

State forcing_state(const ForcingProfile& p, const Grid& g, double t) {
    if (p.norm_sq_mode)
        throw ValidationError(
            "forcing declared by its norm only; simulation needs a separable "
            "profile (shape + envelope)");
    State out(g);
    if (p.shape == ForcingProfile::Shape::Zero) return out;
    const double e = p.g(t);
    if (p.shape == ForcingProfile::Shape::Uniform) {
        for (double& v : out.u) v = e;
        return out;
    }
    out = sine_mode(g, 1);
    for (double& v : out.u) v *= e;
    return out;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                        double b, double fb, double m, double fm, double whole,
                        double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm),
                            tol, 48);
}

struct Channel {
    const ScalarSignal* sig;
    double q;       // exponent applied to |signal|
    double prefactor;
};

} // namespace

double tempered_integral(const ForcingProfile& p, double tau, double decay,
                         double alpha, double tol) {
    if (!(decay > 0.0))
        throw ValidationError(fmt::format("tempered integral needs positive decay (got {})", decay));
    if (!(alpha >= 2.0))
        throw ValidationError(fmt::format("tempered integral needs alpha >= 2 (got {})", alpha));
    if (!(tol > 0.0))
        throw ValidationError(fmt::format("tolerance must be positive (got {})", tol));
    if (!std::isfinite(tau))
        throw ValidationError("tau must be finite");

    const double beta = alpha / (alpha - 1.0);
    std::vector<Channel> channels;
    if (p.norm_sq_mode) {
        channels.push_back({&p.g, 1.0, 1.0});
    } else if (p.shape != ForcingProfile::Shape::Zero && p.shape_norm_sq > 0.0) {
        channels.push_back({&p.g, 2.0, p.shape_norm_sq});
    }
    channels.push_back({&p.h1, 1.0, 1.0});
    channels.push_back({&p.h2, beta, 1.0});

    auto tail = [&](double T) {
        double acc = 0.0;
        for (const Channel& ch : channels)
            acc += ch.prefactor * signal_tail_bound(*ch.sig, T, decay, ch.q);
        return acc;
    };

    // Truncation point: either below every channel's support, or where the
    // analytic tail bound drops under tol/2.  tail() also surfaces divergence.
    double support_floor = std::numeric_limits<double>::infinity();
    bool all_compact = true;
    for (const Channel& ch : channels) {
        if (auto lo = signal_support_lower(*ch.sig))
            support_floor = std::min(support_floor, *lo);
        else
            all_compact = false;
    }

    double a;
    if (all_compact) {
        if (support_floor >= tau) return 0.0;
        a = support_floor;
    } else {
        a = std::min(tau, std::min(support_floor, 0.0)) - 1.0;
        double span = 1.0;
        while (tail(a) > 0.5 * tol) {
            span *= 2.0;
            a = std::min(tau, 0.0) - span;
            if (span > 1e9)
                throw DivergenceError("tempered integral tail does not fall below tolerance");
        }
    }

    auto integrand = [&](double s) {
        double v = p.g_norm_sq(s) + std::abs(p.h1(s)) + std::pow(std::abs(p.h2(s)), beta);
        return std::exp(decay * s) * v;
    };

    // Integrate piecewise between signal breakpoints for robustness at kinks.
    std::vector<double> cuts{a, tau};
    auto add_cut = [&](double t) {
        if (t > a && t < tau) cuts.push_back(t);
    };
    for (const Channel& ch : channels) {
        const ScalarSignal& s = *ch.sig;
        if (s.form == ScalarSignal::Form::CompactSupport) {
            add_cut(s.lo);
            add_cut(s.hi);
        } else if (s.form == ScalarSignal::Form::Table) {
            for (const auto& [t, v] : s.table) add_cut(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double piece_tol = 0.5 * tol / static_cast<double>(cuts.size());
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_adaptive(integrand, cuts[i], cuts[i + 1], piece_tol);
    return total;
}

double absorbing_radius(double tau, double L, const ForcingProfile& p,
                        double decay, double alpha, double tol) {
    if (!(L > 0.0))
        throw ValidationError(fmt::format("absorbing radius needs L > 0 (got {})", L));
    const double I = tempered_integral(p, tau, decay, alpha, tol);
    return L + L * std::exp(-decay * tau) * I;
}

bool is_tempered_family(const ScalarSignal& rho, double decay) {
    if (!(decay > 0.0))
        throw ValidationError(fmt::format("temperedness test needs positive decay (got {})", decay));
    switch (rho.form) {
    case ScalarSignal::Form::Zero:
    case ScalarSignal::Form::Constant:
    case ScalarSignal::Form::Polynomial:
    case ScalarSignal::Form::CompactSupport:
        return true; // e^{decay tau} beats any sub-exponential growth
    case ScalarSignal::Form::Exponential:
        return decay + 2.0 * rho.rate > 0.0;
    case ScalarSignal::Form::Table:
        throw ValidationError("tabulated radius families are not supported");
    }
    return false;
}

} // namespace seelab

#include "hypflow/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "json_io.hpp"
#include "node_list.hpp"
#include "shape_json.hpp"

namespace hypflow {

namespace {

constexpr int kMaxHalvings = 10;

struct Evaluated {
    CurvatureField cf;
    std::vector<double> f;     // speed
    std::vector<double> rate;  // d r / dt = F v
};

Evaluated evaluate(const RadialProfile& p, double sigma2_floor) {
    Evaluated e{curvature_from_profile(p), {}, {}};
    e.f = speed(e.cf, sigma2_floor);
    e.rate.resize(e.f.size());
    for (std::size_t j = 0; j < e.f.size(); ++j) e.rate[j] = e.f[j] * e.cf.v[j];
    return e;
}

std::vector<double> axpy(std::span<const double> r, double a, std::span<const double> k) {
    std::vector<double> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) out[j] = r[j] + a * k[j];
    return out;
}

// RK4 from a state whose rates are already known. Any failure inside the step
// is reported as StepRejected.
std::pair<FlowState, Evaluated> advance(const FlowState& s, const Evaluated& e1, double dt,
                                        double sigma2_floor) {
    try {
        const auto r = s.profile.radii();
        const auto e2 = evaluate(s.profile.with_radii(axpy(r, 0.5 * dt, e1.rate)), sigma2_floor);
        const auto e3 = evaluate(s.profile.with_radii(axpy(r, 0.5 * dt, e2.rate)), sigma2_floor);
        const auto e4 = evaluate(s.profile.with_radii(axpy(r, dt, e3.rate)), sigma2_floor);
        std::vector<double> next(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            next[j] = r[j] + dt / 6.0 * (e1.rate[j] + 2.0 * e2.rate[j] + 2.0 * e3.rate[j] + e4.rate[j]);
        }
        FlowState out{s.t + dt, s.profile.with_radii(std::move(next))};
        auto e_next = evaluate(out.profile, sigma2_floor);
        return {std::move(out), std::move(e_next)};
    } catch (const Error& err) {
        if (err.code() == ErrorCode::Parse || err.code() == ErrorCode::Io) throw;
        throw Error(ErrorCode::StepRejected,
                    "step rejected at t=" + std::to_string(s.t) + ", dt=" + std::to_string(dt) +
                        ": " + err.what());
    }
}

MonitorSample measure_evaluated(const FlowState& s, const Evaluated& e) {
    const CurvatureField& cf = e.cf;
    const int n = cf.n;
    const std::size_t nodes = cf.node_count();
    const auto sig = sigma_table(cf, 3);

    MonitorSample m;
    m.t = s.t;
    m.area = area(cf);
    std::vector<double> f(nodes);
    for (int k = 1; k <= 3; ++k) {
        for (std::size_t j = 0; j < nodes; ++j) f[j] = sig[j * 4 + static_cast<std::size_t>(k)];
        m.int_sigma[static_cast<std::size_t>(k - 1)] = cf.integrate(f);
    }
    for (int k = 0; k <= 3; ++k) {
        for (std::size_t j = 0; j < nodes; ++j) f[j] = e.f[j] * sig[j * 4 + static_cast<std::size_t>(k)];
        m.int_f_sigma[static_cast<std::size_t>(k)] = cf.integrate(f);
    }
    m.q = q_from_integrals(n, m.area, m.int_sigma[1]);
    double dev = 0.0;
    for (double k : cf.kappa) dev = std::max(dev, std::abs(k - 1.0));
    m.umbilic_dev = dev;
    m.main_margin = main_inequality_margin(cf);
    const auto aux = auxiliary_inequality_margins(cf);
    m.aux_margin_weighted = aux.weighted_mean_curvature;
    m.aux_margin_area = aux.area_bound;
    const auto r = s.profile.radii();
    const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
    m.r_min = *lo;
    m.r_max = *hi;
    return m;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// serialization

std::string state_to_json(const FlowState& s) {
    detail::json j;
    j["format"] = "hypflow.state";
    j["version"] = 1;
    j["t"] = s.t;
    j["profile"] = detail::profile_to_json_value(s.profile);
    return j.dump();
}

FlowState state_from_json(std::string_view text) {
    const auto j = detail::parse_json(text, "state");
    const auto format = detail::field_or<std::string>(j, "format", "hypflow.state", "state");
    if (format != "hypflow.state") {
        throw Error(ErrorCode::Parse, "state: unexpected format '" + format + "'");
    }
    if (!j.contains("profile")) throw Error(ErrorCode::Parse, "state: missing field 'profile'");
    const double t = detail::field<double>(j, "t", "state");
    if (!(t >= 0.0)) throw Error(ErrorCode::Parse, "state: t must be >= 0");
    return FlowState{t, detail::profile_from_json_value(j.at("profile"))};
}

void FlowConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::Domain, "config: " + msg); };
    if (n < 3 || n > 8) fail("n must lie in [3, 8]");
    if (n_rho < 50) fail("N must be >= 50");
    if (!(c_cfl > 0.0 && c_cfl <= 0.5)) fail("c_cfl must lie in (0, 0.5]");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) fail("t_max must be positive");
    if (!(sample_interval > 0.0) || !std::isfinite(sample_interval)) fail("sample_interval must be positive");
    if (!(umbilic_tol >= 0.0)) fail("umbilic_tol must be >= 0");
    if (!(sigma2_floor >= 0.0)) fail("sigma2_floor must be >= 0");
}

std::string config_to_json(const FlowConfig& c) {
    detail::json j;
    j["format"] = "hypflow.config";
    j["version"] = 1;
    j["n"] = c.n;
    j["N"] = c.n_rho;
    j["c_cfl"] = c.c_cfl;
    j["t_max"] = c.t_max;
    j["sample_interval"] = c.sample_interval;
    j["umbilic_tol"] = c.umbilic_tol;
    j["sigma2_floor"] = c.sigma2_floor;
    j["shape"] = detail::shape_to_json_value(c.shape);
    return j.dump();
}

FlowConfig config_from_json(std::string_view text) {
    constexpr const char* what = "config";
    const auto j = detail::parse_json(text, what);
    if (!j.is_object()) throw Error(ErrorCode::Parse, "config: expected a JSON object");
    const auto format = detail::field_or<std::string>(j, "format", "hypflow.config", what);
    if (format != "hypflow.config") {
        throw Error(ErrorCode::Parse, "config: unexpected format '" + format + "'");
    }
    const int version = detail::field_or<int>(j, "version", 1, what);
    if (version != 1) throw Error(ErrorCode::Parse, "config: unsupported version " + std::to_string(version));
    static const std::array<std::string_view, 11> known = {
        "format", "version", "n", "N", "c_cfl", "t_max", "sample_interval",
        "umbilic_tol", "sigma2_floor", "shape", "comment"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw Error(ErrorCode::Parse, "config: unknown field '" + item.key() + "'");
        }
    }
    FlowConfig c;
    c.n = detail::field_or<int>(j, "n", c.n, what);
    c.n_rho = detail::field_or<int>(j, "N", c.n_rho, what);
    c.c_cfl = detail::field_or<double>(j, "c_cfl", c.c_cfl, what);
    c.t_max = detail::field_or<double>(j, "t_max", c.t_max, what);
    c.sample_interval = detail::field_or<double>(j, "sample_interval", c.sample_interval, what);
    c.umbilic_tol = detail::field_or<double>(j, "umbilic_tol", c.umbilic_tol, what);
    c.sigma2_floor = detail::field_or<double>(j, "sigma2_floor", c.sigma2_floor, what);
    if (j.contains("shape")) c.shape = detail::shape_from_json_value(j.at("shape"));
    c.validate();
    return c;
}

std::string config_hash(const FlowConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_to_json(c))));
    return buf;
}

// ---------------------------------------------------------------------------
// flow

std::vector<double> speed(const CurvatureField& cf, double sigma2_floor) {
    const int n = cf.n;
    const double c = (n - 2.0) / (2.0 * (n - 1.0));
    const auto sig = sigma_table(cf, 2);
    std::vector<double> f(cf.node_count());
    std::vector<std::size_t> bad;
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double s1 = sig[j * 3 + 1];
        const double s2 = sig[j * 3 + 2];
        if (!(s2 > sigma2_floor) || !(s1 > 0.0)) {
            bad.push_back(j);
            continue;
        }
        f[j] = c * s1 / s2;
    }
    if (!bad.empty()) {
        throw Error(ErrorCode::TwoConvexityLoss,
                    "two-convexity lost (sigma_2 <= " + std::to_string(sigma2_floor) + "); " +
                        detail::describe_nodes(bad));
    }
    return f;
}

double stable_time_step(const CurvatureField& cf, double c_cfl) {
    const int n = cf.n;
    const double c = (n - 2.0) / (2.0 * (n - 1.0));
    const auto sig = sigma_table(cf, 2);
    double diffusivity = 0.0;
    for (std::size_t j = 0; j < cf.node_count(); ++j) {
        const double s1 = sig[j * 3 + 1];
        const double s2 = sig[j * 3 + 2];
        double worst = 0.0;
        for (double k : cf.kappa_at(j)) {
            // dF/dkappa_i = c (sigma_2 - sigma_1 (sigma_1 - kappa_i)) / sigma_2^2
            worst = std::max(worst, std::abs(c * (s2 - s1 * (s1 - k)) / (s2 * s2)));
        }
        diffusivity = std::max(diffusivity, worst / (cf.lambda[j] * cf.lambda[j]));
    }
    const double h = cf.grid->min_spacing();
    if (!(diffusivity > 0.0)) return std::numeric_limits<double>::infinity();
    return c_cfl * h * h / ((n - 1) * diffusivity);
}

FlowState step(const FlowState& s, double dt, double sigma2_floor) {
    if (!(dt >= 0.0)) throw Error(ErrorCode::Domain, "step: dt must be >= 0");
    if (dt == 0.0) return s;
    Evaluated e1;
    try {
        e1 = evaluate(s.profile, sigma2_floor);
    } catch (const Error& err) {
        throw Error(ErrorCode::StepRejected, std::string("step rejected: ") + err.what());
    }
    return advance(s, e1, dt, sigma2_floor).first;
}

MonitorSample measure(const FlowState& s, double sigma2_floor) {
    return measure_evaluated(s, evaluate(s.profile, sigma2_floor));
}

MonitorSeries run(const FlowConfig& config, const SampleObserver& observer,
                  const std::optional<FlowState>& resume) {
    config.validate();
    FlowState state = resume ? *resume
                             : FlowState{0.0, make_two_convex_profile(config.shape, config.n, config.n_rho)};
    if (state.profile.dim() != config.n) {
        throw Error(ErrorCode::Domain, "resume state dimension does not match the config");
    }
    Evaluated current;
    try {
        current = evaluate(state.profile, config.sigma2_floor);
    } catch (const Error& err) {
        throw Error(ErrorCode::Precondition, std::string("initial state rejected: ") + err.what());
    }

    MonitorSeries series;
    series.meta.config_hash = config_hash(config);
    series.meta.n = config.n;
    series.meta.n_rho = state.profile.grid().n_rho();
    series.meta.n_phi = state.profile.grid().n_phi();
    series.meta.representation = to_string(state.profile.representation());
    series.meta.rng = SeededRng::kAlgorithm;

    auto record = [&](const FlowState& st, const Evaluated& e) {
        series.samples.push_back(measure_evaluated(st, e));
        if (observer) observer(st, series.samples.back());
    };
    record(state, current);

    const double t0 = state.t;
    long long k = 1;
    while (state.t < config.t_max) {
        const double target = std::min(t0 + static_cast<double>(k) * config.sample_interval, config.t_max);
        while (state.t < target) {
            double dt = std::min(stable_time_step(current.cf, config.c_cfl), target - state.t);
            int halvings = 0;
            for (;;) {
                const bool lands = target - (state.t + dt) <= 1e-12 * std::max(1.0, target);
                try {
                    auto [next, e_next] = advance(state, current, lands ? target - state.t : dt,
                                                  config.sigma2_floor);
                    if (lands) next.t = target;
                    state = std::move(next);
                    current = std::move(e_next);
                    break;
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::StepRejected) throw;
                    if (++halvings > kMaxHalvings) {
                        throw FlowBreakdownError(std::string("flow breakdown after ") +
                                                     std::to_string(kMaxHalvings) +
                                                     " consecutive step halvings: " + err.what(),
                                                 state, series);
                    }
                    dt *= 0.5;
                }
            }
        }
        record(state, current);
        ++k;
        if (config.umbilic_tol > 0.0 && series.back().umbilic_dev < config.umbilic_tol) break;
    }
    return series;
}

// ---------------------------------------------------------------------------
// verification hooks

std::vector<EvolutionResidual> evolution_identity_residual(const MonitorSeries& series, int m) {
    const int n = series.meta.n;
    if (series.size() < 3) {
        throw Error(ErrorCode::Domain, "evolution_identity_residual: need at least 3 samples");
    }
    const bool upper_recorded = m + 1 <= 3 || m + 1 > n - 1;
    if (m < 0 || m > n - 1 || m > 3 || !upper_recorded) {
        throw Error(ErrorCode::Domain, "evolution_identity_residual: order m=" + std::to_string(m) +
                                           " not supported for n=" + std::to_string(n));
    }
    auto integral = [m](const MonitorSample& s) {
        return m == 0 ? s.area : s.int_sigma[static_cast<std::size_t>(m - 1)];
    };
    auto right_side = [m, n](const MonitorSample& s) {
        double rhs = 0.0;
        if (m + 1 <= n - 1) rhs += (m + 1) * s.int_f_sigma[static_cast<std::size_t>(m + 1)];
        if (m >= 1) rhs += (n - m) * s.int_f_sigma[static_cast<std::size_t>(m - 1)];
        return rhs;
    };

    std::vector<EvolutionResidual> out;
    const auto& s = series.samples;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double h1 = s[i].t - s[i - 1].t;
        const double h2 = s[i + 1].t - s[i].t;
        const double d = -h2 / (h1 * (h1 + h2)) * integral(s[i - 1]) +
                         (h2 - h1) / (h1 * h2) * integral(s[i]) +
                         h1 / (h2 * (h1 + h2)) * integral(s[i + 1]);
        EvolutionResidual r;
        r.t = s[i].t;
        r.lhs = d;
        r.rhs = right_side(s[i]);
        r.absolute = std::abs(d - r.rhs);
        r.relative = r.rhs != 0.0 ? r.absolute / std::abs(r.rhs) : r.absolute;
        out.push_back(r);
    }
    return out;
}

DecayFit umbilic_decay_fit(const MonitorSeries& series, std::optional<double> t_from,
                           std::optional<double> t_to) {
    if (series.size() < 3) throw Error(ErrorCode::Domain, "umbilic_decay_fit: need at least 3 samples");
    const int n = series.meta.n;
    const double span = series.back().t - series.samples.front().t;
    if (span < 3.0 * (n - 1)) {
        throw Error(ErrorCode::Domain, "umbilic_decay_fit: series spans t-range " + std::to_string(span) +
                                           " < 3(n-1)");
    }
    const double lo = t_from.value_or(series.samples.front().t + 0.5 * span);
    const double hi = t_to.value_or(series.back().t);

    constexpr double kNoiseFloor = 1e-12;
    DecayFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : series.samples) {
        if (s.t < lo - 1e-12 || s.t > hi + 1e-12) continue;
        if (s.umbilic_dev < kNoiseFloor) {
            fit.reliable = false;
            continue;
        }
        const double y = std::log(s.umbilic_dev);
        sx += s.t;
        sy += y;
        sxx += s.t * s.t;
        sxy += s.t * y;
        ++fit.samples;
    }
    if (fit.samples < 3) throw Error(ErrorCode::Domain, "umbilic_decay_fit: fewer than 3 usable samples");
    const double k = static_cast<double>(fit.samples);
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / k;
    return fit;
}

double sphere_ode_oracle(double r0, int n, double t) {
    if (!(r0 > 0.0)) throw Error(ErrorCode::Domain, "sphere_ode_oracle: r0 must be positive");
    if (n < 3) throw Error(ErrorCode::Domain, "sphere_ode_oracle: n must be >= 3");
    if (t == 0.0) return r0;
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 1>;
    State x{r0};
    const double rate = 1.0 / (n - 1);
    auto rhs = [rate](const State& r, State& drdt, double) { drdt[0] = std::tanh(r[0]) * rate; };
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-12, 1e-12);
    odeint::integrate_adaptive(stepper, rhs, x, 0.0, t, std::min(1e-3, t));
    return x[0];
}

double sphere_radius_closed_form(double r0, int n, double t) {
    return std::asinh(std::sinh(r0) * std::exp(t / (n - 1)));
}

}  // namespace hypflow

#include "hypflow/hypflow.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "hypflow/checks.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/report.hpp"
#include "hypflow/symfun.hpp"
#include "json_io.hpp"

struct hf_profile {
    hypflow::RadialProfile value;
};
struct hf_series {
    hypflow::MonitorSeries value;
};
struct hf_state {
    hypflow::FlowState value;
};

namespace {

thread_local std::string last_error;

hf_status status_of(hypflow::ErrorCode code) {
    using hypflow::ErrorCode;
    switch (code) {
        case ErrorCode::Domain: return HF_ERR_DOMAIN;
        case ErrorCode::Precondition: return HF_ERR_PRECONDITION;
        case ErrorCode::Overflow: return HF_ERR_OVERFLOW;
        case ErrorCode::TwoConvexityLoss: return HF_ERR_TWO_CONVEXITY;
        case ErrorCode::StepRejected: return HF_ERR_STEP_REJECTED;
        case ErrorCode::FlowBreakdown: return HF_ERR_FLOW_BREAKDOWN;
        case ErrorCode::Parse: return HF_ERR_PARSE;
        case ErrorCode::Io: return HF_ERR_IO;
    }
    return HF_ERR_INTERNAL;
}

template <typename F>
hf_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return HF_OK;
    } catch (const hypflow::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return HF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return HF_ERR_INTERNAL;
    }
}

hf_status invalid(const char* what) {
    last_error = what;
    return HF_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

hypflow::CurvatureTuple tuple(const double* kappa, size_t len) {
    return hypflow::CurvatureTuple::make(std::vector<double>(kappa, kappa + len));
}

hypflow::Tolerances tolerances_from_json(const char* text) {
    hypflow::Tolerances t;
    if (!text) return t;
    using hypflow::detail::field_or;
    const char* what = "tolerances";
    const auto j = hypflow::detail::parse_json(text, what);
    t.q_drift = field_or(j, "q_drift", t.q_drift, what);
    t.q_bound = field_or(j, "q_bound", t.q_bound, what);
    t.margin = field_or(j, "margin", t.margin, what);
    t.area_growth_rel = field_or(j, "area_growth_rel", t.area_growth_rel, what);
    t.limit_rel = field_or(j, "limit_rel", t.limit_rel, what);
    t.limit_min_time = field_or(j, "limit_min_time", t.limit_min_time, what);
    t.gauss_bonnet = field_or(j, "gauss_bonnet", t.gauss_bonnet, what);
    t.sphere_oracle = field_or(j, "sphere_oracle", t.sphere_oracle, what);
    return t;
}

}  // namespace

extern "C" {

const char* hf_version(void) { return "0.1.0"; }

const char* hf_last_error(void) { return last_error.c_str(); }

const char* hf_status_name(hf_status status) {
    switch (status) {
        case HF_OK: return "ok";
        case HF_ERR_DOMAIN: return "domain error";
        case HF_ERR_PRECONDITION: return "precondition violated";
        case HF_ERR_OVERFLOW: return "overflow";
        case HF_ERR_TWO_CONVEXITY: return "two-convexity lost";
        case HF_ERR_STEP_REJECTED: return "step rejected";
        case HF_ERR_FLOW_BREAKDOWN: return "flow breakdown";
        case HF_ERR_PARSE: return "parse error";
        case HF_ERR_IO: return "i/o error";
        case HF_ERR_INVALID_ARGUMENT: return "invalid argument";
        case HF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void hf_string_free(char* s) { std::free(s); }

hf_status hf_sigma(const double* kappa, size_t len, int m, double* out) {
    if (!kappa || !out) return invalid("hf_sigma: null pointer");
    return guarded([&] { *out = hypflow::elementary_symmetric(tuple(kappa, len), m); });
}

hf_status hf_newton_tensor_diag(const double* kappa, size_t len, int m, double* out) {
    if (!kappa || !out) return invalid("hf_newton_tensor_diag: null pointer");
    return guarded([&] {
        const auto d = hypflow::newton_tensor_diag(tuple(kappa, len), m);
        std::copy(d.begin(), d.end(), out);
    });
}

hf_status hf_in_garding_cone(const double* kappa, size_t len, int m, int* out) {
    if (!kappa || !out) return invalid("hf_in_garding_cone: null pointer");
    return guarded([&] { *out = hypflow::in_garding_cone(tuple(kappa, len), m) ? 1 : 0; });
}

hf_status hf_sphere_area_constant(int n, double* out) {
    if (!out) return invalid("hf_sphere_area_constant: null pointer");
    return guarded([&] { *out = hypflow::sphere_area_constant(n); });
}

hf_status hf_sharp_q_constant(int n, double* out) {
    if (!out) return invalid("hf_sharp_q_constant: null pointer");
    return guarded([&] { *out = hypflow::sharp_q_constant(n); });
}

hf_status hf_sphere_ode_oracle(double r0, int n, double t, double* out) {
    if (!out) return invalid("hf_sphere_ode_oracle: null pointer");
    return guarded([&] { *out = hypflow::sphere_ode_oracle(r0, n, t); });
}

hf_status hf_profile_from_shape(const char* shape_json, int n, int n_rho, hf_profile** out) {
    if (!shape_json || !out) return invalid("hf_profile_from_shape: null pointer");
    return guarded([&] {
        const auto shape = hypflow::shape_from_json(shape_json);
        *out = new hf_profile{hypflow::make_profile(shape, n, n_rho)};
    });
}

hf_status hf_profile_from_json(const char* json, hf_profile** out) {
    if (!json || !out) return invalid("hf_profile_from_json: null pointer");
    return guarded([&] { *out = new hf_profile{hypflow::profile_from_json(json)}; });
}

hf_status hf_profile_to_json(const hf_profile* p, char** out) {
    if (!p || !out) return invalid("hf_profile_to_json: null pointer");
    return guarded([&] { *out = dup(hypflow::profile_to_json(p->value)); });
}

void hf_profile_free(hf_profile* p) { delete p; }

hf_status hf_profile_area(const hf_profile* p, double* out) {
    if (!p || !out) return invalid("hf_profile_area: null pointer");
    return guarded([&] { *out = hypflow::area(p->value); });
}

hf_status hf_profile_total_sigma(const hf_profile* p, int m, double* out) {
    if (!p || !out) return invalid("hf_profile_total_sigma: null pointer");
    return guarded([&] { *out = hypflow::total_sigma(p->value, m); });
}

hf_status hf_profile_q(const hf_profile* p, double* out) {
    if (!p || !out) return invalid("hf_profile_q: null pointer");
    return guarded([&] { *out = hypflow::q_value(p->value); });
}

hf_status hf_profile_main_margin(const hf_profile* p, double* out) {
    if (!p || !out) return invalid("hf_profile_main_margin: null pointer");
    return guarded([&] { *out = hypflow::main_inequality_margin(p->value); });
}

hf_status hf_profile_aux_margins(const hf_profile* p, double* weighted, double* area_bound) {
    if (!p || !weighted || !area_bound) return invalid("hf_profile_aux_margins: null pointer");
    return guarded([&] {
        const auto m = hypflow::auxiliary_inequality_margins(p->value);
        *weighted = m.weighted_mean_curvature;
        *area_bound = m.area_bound;
    });
}

hf_status hf_config_hash(const char* config_json, char** out) {
    if (!config_json || !out) return invalid("hf_config_hash: null pointer");
    return guarded([&] { *out = dup(hypflow::config_hash(hypflow::config_from_json(config_json))); });
}

hf_status hf_flow_run(const char* config_json, const char* checkpoint_json, hf_series** series,
                      hf_state** state) {
    if (!config_json) return invalid("hf_flow_run: null config");
    if (series) *series = nullptr;
    if (state) *state = nullptr;
    return guarded([&] {
        const auto config = hypflow::config_from_json(config_json);
        std::optional<hypflow::FlowState> resume;
        if (checkpoint_json) resume = hypflow::state_from_json(checkpoint_json);
        std::optional<hypflow::FlowState> last;
        try {
            auto result = hypflow::run(
                config, [&](const hypflow::FlowState& s, const hypflow::MonitorSample&) { last = s; }, resume);
            if (series) *series = new hf_series{std::move(result)};
            if (state && last) *state = new hf_state{std::move(*last)};
        } catch (const hypflow::FlowBreakdownError& e) {
            if (series) *series = new hf_series{e.partial_series()};
            if (state) *state = new hf_state{e.last_good_state()};
            throw;
        }
    });
}

hf_status hf_state_to_json(const hf_state* s, char** out) {
    if (!s || !out) return invalid("hf_state_to_json: null pointer");
    return guarded([&] { *out = dup(hypflow::state_to_json(s->value)); });
}

hf_status hf_state_time(const hf_state* s, double* out) {
    if (!s || !out) return invalid("hf_state_time: null pointer");
    *out = s->value.t;
    return HF_OK;
}

void hf_state_free(hf_state* s) { delete s; }

hf_status hf_series_emit(const hf_series* s, const char* format, char** out) {
    if (!s || !format || !out) return invalid("hf_series_emit: null pointer");
    return guarded([&] { *out = dup(hypflow::emit(s->value, hypflow::format_from_string(format))); });
}

hf_status hf_series_from_json(const char* json, hf_series** out) {
    if (!json || !out) return invalid("hf_series_from_json: null pointer");
    return guarded([&] { *out = new hf_series{hypflow::series_from_json(json)}; });
}

hf_status hf_series_size(const hf_series* s, size_t* out) {
    if (!s || !out) return invalid("hf_series_size: null pointer");
    *out = s->value.size();
    return HF_OK;
}

hf_status hf_series_config_hash(const hf_series* s, char** out) {
    if (!s || !out) return invalid("hf_series_config_hash: null pointer");
    return guarded([&] { *out = dup(s->value.meta.config_hash); });
}

hf_status hf_series_verdicts(const hf_series* s, const char* tolerances_json, int* all_pass,
                             char** report_json, char** report_text) {
    if (!s) return invalid("hf_series_verdicts: null series");
    return guarded([&] {
        const auto report = hypflow::verdicts(s->value, tolerances_from_json(tolerances_json));
        if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
        if (report_json) *report_json = dup(report.to_json());
        if (report_text) *report_text = dup(report.to_text());
    });
}

void hf_series_free(hf_series* s) { delete s; }

hf_status hf_check_suites(char** names_json) {
    if (!names_json) return invalid("hf_check_suites: null pointer");
    return guarded([&] { *names_json = dup(hypflow::detail::json(hypflow::suite_names()).dump()); });
}

hf_status hf_check_run(const char* options_json, int* all_pass, char** report_text, char** report_json) {
    return guarded([&] {
        hypflow::CheckOptions o;
        if (options_json) {
            using hypflow::detail::field_or;
            const char* what = "check options";
            const auto j = hypflow::detail::parse_json(options_json, what);
            o.only = field_or<std::string>(j, "only", "", what);
            if (j.contains("n")) o.n = hypflow::detail::field<int>(j, "n", what);
            if (j.contains("shape")) {
                o.shape = hypflow::shape_kind_from_string(hypflow::detail::field<std::string>(j, "shape", what));
            }
            o.seed = field_or<std::uint64_t>(j, "seed", o.seed, what);
        }
        const auto report = hypflow::run_checks(o);
        if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
        if (report_text) *report_text = dup(report.to_text());
        if (report_json) *report_json = dup(report.to_json());
    });
}

}  // extern "C"

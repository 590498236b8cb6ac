#ifndef HYPFLOW_H
#define HYPFLOW_H

/* C interface to libhypflow. Every function returns an hf_status; on failure
 * hf_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). Strings returned through char** out-parameters
 * are heap-allocated and must be released with hf_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HF_API __declspec(dllexport)
#else
#define HF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hf_status {
    HF_OK = 0,
    HF_ERR_DOMAIN = 1,
    HF_ERR_PRECONDITION = 2,
    HF_ERR_OVERFLOW = 3,
    HF_ERR_TWO_CONVEXITY = 4,
    HF_ERR_STEP_REJECTED = 5,
    HF_ERR_FLOW_BREAKDOWN = 6,
    HF_ERR_PARSE = 7,
    HF_ERR_IO = 8,
    HF_ERR_INVALID_ARGUMENT = 9,
    HF_ERR_INTERNAL = 10
} hf_status;

typedef struct hf_profile hf_profile;
typedef struct hf_series hf_series;
typedef struct hf_state hf_state;

HF_API const char* hf_version(void);
HF_API const char* hf_last_error(void);
HF_API const char* hf_status_name(hf_status status);
HF_API void hf_string_free(char* s);

/* symmetric functions of a curvature tuple kappa[0..len) (len >= 2) */
HF_API hf_status hf_sigma(const double* kappa, size_t len, int m, double* out);
HF_API hf_status hf_newton_tensor_diag(const double* kappa, size_t len, int m, double* out);
HF_API hf_status hf_in_garding_cone(const double* kappa, size_t len, int m, int* out);

/* geometry */
HF_API hf_status hf_sphere_area_constant(int n, double* out);
HF_API hf_status hf_sharp_q_constant(int n, double* out);
HF_API hf_status hf_sphere_ode_oracle(double r0, int n, double t, double* out);

/* profiles; shape_json as in the "shape" field of a run config */
HF_API hf_status hf_profile_from_shape(const char* shape_json, int n, int n_rho, hf_profile** out);
HF_API hf_status hf_profile_from_json(const char* json, hf_profile** out);
HF_API hf_status hf_profile_to_json(const hf_profile* p, char** out);
HF_API void hf_profile_free(hf_profile* p);
HF_API hf_status hf_profile_area(const hf_profile* p, double* out);
HF_API hf_status hf_profile_total_sigma(const hf_profile* p, int m, double* out);
HF_API hf_status hf_profile_q(const hf_profile* p, double* out);
HF_API hf_status hf_profile_main_margin(const hf_profile* p, double* out);
HF_API hf_status hf_profile_aux_margins(const hf_profile* p, double* weighted, double* area_bound);

/* flow. checkpoint_json may be NULL. On HF_ERR_FLOW_BREAKDOWN the partial
 * series and the last good state are still returned. Either out-pointer may
 * be NULL when the caller does not need it. */
HF_API hf_status hf_config_hash(const char* config_json, char** out);
HF_API hf_status hf_flow_run(const char* config_json, const char* checkpoint_json, hf_series** series,
                             hf_state** state);
HF_API hf_status hf_state_to_json(const hf_state* s, char** out);
HF_API hf_status hf_state_time(const hf_state* s, double* out);
HF_API void hf_state_free(hf_state* s);

/* series; format is "csv", "json" or "svg" */
HF_API hf_status hf_series_emit(const hf_series* s, const char* format, char** out);
HF_API hf_status hf_series_from_json(const char* json, hf_series** out);
HF_API hf_status hf_series_size(const hf_series* s, size_t* out);
HF_API hf_status hf_series_config_hash(const hf_series* s, char** out);
/* tolerances_json may be NULL for the defaults */
HF_API hf_status hf_series_verdicts(const hf_series* s, const char* tolerances_json, int* all_pass,
                                    char** report_json, char** report_text);
HF_API void hf_series_free(hf_series* s);

/* static suites; options_json like {"only": "beckner", "n": 5, "shape": "cosine_bump", "seed": 1} */
HF_API hf_status hf_check_suites(char** names_json);
HF_API hf_status hf_check_run(const char* options_json, int* all_pass, char** report_text, char** report_json);

#ifdef __cplusplus
}
#endif

#endif

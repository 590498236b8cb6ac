#pragma once

// Inverse curvature flow d/dt X = ((n-2)/(2(n-1))) (sigma_1/sigma_2) nu for
// star-shaped, two-convex hypersurfaces of H^n. In graph form the radius
// obeys d/dt r = F v, integrated here with explicit RK4.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypflow/errors.hpp"
#include "hypflow/geometry.hpp"
#include "hypflow/monitor.hpp"
#include "hypflow/profile.hpp"
#include "hypflow/shapes.hpp"

namespace hypflow {

struct FlowState {
    double t = 0.0;
    RadialProfile profile;
};

/// Checkpoint document: {"format": "hypflow.state", "version": 1, "t": ..., "profile": {...}}.
[[nodiscard]] std::string state_to_json(const FlowState& s);
[[nodiscard]] FlowState state_from_json(std::string_view text);

struct FlowConfig {
    int n = 5;
    int n_rho = 400;
    double c_cfl = 0.1;          // fraction of the parabolic step bound
    double t_max = 10.0;
    double sample_interval = 0.01;
    double umbilic_tol = 0.0;    // stop once max |kappa_i - 1| < umbilic_tol; 0 disables
    double sigma2_floor = 1e-12;
    ShapeSpec shape = ShapeSpec::cosine_bump(1.0, 0.1, 2);

    /// Throws Domain when a field is out of range.
    void validate() const;
};

/// Config document (all fields optional except where noted, defaults above):
///   {"format": "hypflow.config", "version": 1, "n": 5, "N": 400, "c_cfl": 0.1,
///    "t_max": 10, "sample_interval": 0.01, "umbilic_tol": 0,
///    "sigma2_floor": 1e-12, "shape": {"kind": "cosine_bump", ...}}
[[nodiscard]] std::string config_to_json(const FlowConfig& c);
[[nodiscard]] FlowConfig config_from_json(std::string_view text);
/// 16 hex digits of FNV-1a over the canonical config document.
[[nodiscard]] std::string config_hash(const FlowConfig& c);

/// Thrown by run() after too many consecutive step rejections.
class FlowBreakdownError : public Error {
public:
    FlowBreakdownError(const std::string& what, FlowState last_good, MonitorSeries partial)
        : Error(ErrorCode::FlowBreakdown, what),
          last_good_(std::move(last_good)),
          partial_(std::move(partial)) {}

    [[nodiscard]] const FlowState& last_good_state() const noexcept { return last_good_; }
    [[nodiscard]] const MonitorSeries& partial_series() const noexcept { return partial_; }

private:
    FlowState last_good_;
    MonitorSeries partial_;
};

/// F = ((n-2)/(2(n-1))) sigma_1 / sigma_2 per node. Throws TwoConvexityLoss
/// listing the nodes where sigma_2 <= sigma2_floor (or sigma_1 <= 0).
[[nodiscard]] std::vector<double> speed(const CurvatureField& cf, double sigma2_floor = 1e-12);

/// Largest stable explicit step, c_cfl h^2 / ((n-1) D), where D bounds the
/// angular diffusivity |dF/dkappa_i| / lambda^2 of the linearized flow.
[[nodiscard]] double stable_time_step(const CurvatureField& cf, double c_cfl);

/// One RK4 step. dt = 0 returns the state unchanged; dt < 0 throws Domain.
/// Throws StepRejected when the result leaves the admissible set.
[[nodiscard]] FlowState step(const FlowState& s, double dt, double sigma2_floor = 1e-12);

/// Monitors of a single state.
[[nodiscard]] MonitorSample measure(const FlowState& s, double sigma2_floor = 1e-12);

using SampleObserver = std::function<void(const FlowState&, const MonitorSample&)>;

/// Integrates from the configured shape (or from `resume`) to t_max, sampling
/// every sample_interval. Throws Precondition when the initial data is not
/// two-convex, FlowBreakdownError after 10 consecutive halvings of a rejected step.
[[nodiscard]] MonitorSeries run(const FlowConfig& config, const SampleObserver& observer = {},
                                const std::optional<FlowState>& resume = std::nullopt);

struct EvolutionResidual {
    double t = 0.0;
    double lhs = 0.0;       // central difference of int sigma_m in t
    double rhs = 0.0;       // (m+1) int F sigma_{m+1} + (n-m) int F sigma_{m-1}
    double absolute = 0.0;
    double relative = 0.0;  // absolute / |rhs|
};

/// Residual of d/dt int sigma_m = (m+1) int F sigma_{m+1} + (n-m) int F sigma_{m-1}
/// at every interior sample. m ranges over 0..2, plus m = n-1 when n <= 4.
/// Throws Domain for fewer than 3 samples or an m the series cannot support.
[[nodiscard]] std::vector<EvolutionResidual> evolution_identity_residual(const MonitorSeries& series,
                                                                         int m);

struct DecayFit {
    double slope = 0.0;      // d log(max |kappa_i - 1|) / dt
    double intercept = 0.0;
    std::size_t samples = 0;
    bool reliable = true;    // false once the deviation reaches round-off level
};

/// Least-squares slope of log(max |kappa_i - 1|) against t over [t_from, t_to].
/// Without a window the last half of the series is used. Throws Domain when the
/// series spans less than 3(n-1) in time or the window holds fewer than 3 samples.
[[nodiscard]] DecayFit umbilic_decay_fit(const MonitorSeries& series,
                                         std::optional<double> t_from = std::nullopt,
                                         std::optional<double> t_to = std::nullopt);

/// Radius of the geodesic sphere flowing from r0: solves r' = tanh(r)/(n-1)
/// adaptively to 1e-12.
[[nodiscard]] double sphere_ode_oracle(double r0, int n, double t);

/// Closed form of the same: sinh r(t) = sinh(r0) exp(t/(n-1)).
[[nodiscard]] double sphere_radius_closed_form(double r0, int n, double t);

}  // namespace hypflow

#include "hypflow/profile.hpp"

#include <cmath>

#include "hypflow/errors.hpp"
#include "json_io.hpp"

namespace hypflow {

RadialProfile::RadialProfile(std::shared_ptr<const Grid> grid, std::vector<double> r)
    : grid_(std::move(grid)), r_(std::move(r)) {
    if (!grid_) throw Error(ErrorCode::Domain, "profile without a grid");
    if (r_.size() != grid_->node_count()) {
        throw Error(ErrorCode::Domain, "profile has " + std::to_string(r_.size()) +
                                           " radii for a grid of " +
                                           std::to_string(grid_->node_count()) + " nodes");
    }
    for (std::size_t j = 0; j < r_.size(); ++j) {
        if (!std::isfinite(r_[j]) || r_[j] <= 0.0) {
            throw Error(ErrorCode::Domain, "radius at node " + std::to_string(j) +
                                               " is not a positive finite number");
        }
        if (r_[j] >= kMaxRadius) {
            throw Error(ErrorCode::Overflow, "radius " + std::to_string(r_[j]) + " at node " +
                                                 std::to_string(j) + " exceeds the cap " +
                                                 std::to_string(kMaxRadius));
        }
    }
}

RadialProfile RadialProfile::axisymmetric(int n, std::vector<double> r) {
    const int count = static_cast<int>(r.size());
    return RadialProfile(Grid::axisymmetric(n, count), std::move(r));
}

RadialProfile RadialProfile::full_sphere(int n_rho, int n_phi, std::vector<double> r) {
    return RadialProfile(Grid::full_sphere(n_rho, n_phi), std::move(r));
}

RadialProfile RadialProfile::with_radii(std::vector<double> r) const {
    return RadialProfile(grid_, std::move(r));
}

namespace detail {

json profile_to_json_value(const RadialProfile& p) {
    const Grid& g = p.grid();
    json j;
    j["format"] = "hypflow.profile";
    j["version"] = 1;
    j["n"] = g.dim();
    j["representation"] = to_string(g.representation());
    j["n_rho"] = g.n_rho();
    j["n_phi"] = g.n_phi();
    j["r"] = std::vector<double>(p.radii().begin(), p.radii().end());
    return j;
}

RadialProfile profile_from_json_value(const json& j) {
    constexpr const char* what = "profile";
    const auto format = field_or<std::string>(j, "format", "hypflow.profile", what);
    if (format != "hypflow.profile") {
        throw Error(ErrorCode::Parse, "profile: unexpected format '" + format + "'");
    }
    const int version = field_or<int>(j, "version", 1, what);
    if (version != 1) {
        throw Error(ErrorCode::Parse, "profile: unsupported version " + std::to_string(version));
    }
    const int n = field<int>(j, "n", what);
    const auto rep = field<std::string>(j, "representation", what);
    const int n_rho = field<int>(j, "n_rho", what);
    auto r = field<std::vector<double>>(j, "r", what);
    if (rep == "axisymmetric") {
        const int n_phi = field_or<int>(j, "n_phi", 1, what);
        if (n_phi != 1 || static_cast<int>(r.size()) != n_rho) {
            throw Error(ErrorCode::Parse, "profile: axisymmetric grid size mismatch");
        }
        return RadialProfile(Grid::axisymmetric(n, n_rho), std::move(r));
    }
    if (rep == "full_sphere") {
        if (n != 3) throw Error(ErrorCode::Parse, "profile: full_sphere requires n = 3");
        const int n_phi = field<int>(j, "n_phi", what);
        return RadialProfile(Grid::full_sphere(n_rho, n_phi), std::move(r));
    }
    throw Error(ErrorCode::Parse, "profile: unknown representation '" + rep + "'");
}

}  // namespace detail

std::string profile_to_json(const RadialProfile& p) {
    return detail::profile_to_json_value(p).dump();
}

RadialProfile profile_from_json(std::string_view text) {
    return detail::profile_from_json_value(detail::parse_json(text, "profile"));
}

}  // namespace hypflow

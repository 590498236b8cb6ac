#pragma once

#include <stdexcept>
#include <string>

namespace hypflow {

enum class ErrorCode {
    Domain,            // argument outside the mathematical domain of an operation
    Precondition,      // input violates a stated precondition (e.g. not two-convex)
    Overflow,          // non-finite intermediate, or radius beyond the supported cap
    TwoConvexityLoss,  // sigma_2 fell to or below the configured floor
    StepRejected,      // a single time step produced an invalid state
    FlowBreakdown,     // repeated step rejection; the run cannot continue
    Parse,             // malformed JSON/CSV input
    Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hypflow

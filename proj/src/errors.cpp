#include "hypflow/errors.hpp"

namespace hypflow {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Precondition: return "precondition";
        case ErrorCode::Overflow: return "overflow";
        case ErrorCode::TwoConvexityLoss: return "two-convexity loss";
        case ErrorCode::StepRejected: return "step rejected";
        case ErrorCode::FlowBreakdown: return "flow breakdown";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

}  // namespace hypflow

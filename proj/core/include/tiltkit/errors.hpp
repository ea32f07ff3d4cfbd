#pragma once

#include <stdexcept>
#include <string>

namespace tiltkit {

/// Error categories, mapped to CLI exit statuses (see tools/).
enum class ErrorCode {
    Parse,              // malformed descriptor or element expression
    BadParameter,       // structurally valid input with an illegal value
    CtxMismatch,        // operands from different ring contexts
    TooLarge,           // enumeration above the configured cap
    Incompatible,       // a p-power compatibility relation fails
    NotCauchy,          // limit precondition fails
    InsufficientDepth,  // requested precision unreachable at given depth
    NotInImage,         // element outside the multiplicative-section image
    BadElement,         // element outside the localized ring model
    HypothesisFail,     // a stated precondition of a lemma check fails
    UnknownDemo,
    Usage,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace tiltkit

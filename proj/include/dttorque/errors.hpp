#pragma once

#include <stdexcept>
#include <string>

namespace dtt {

enum class ErrorCode {
    DomainError,
    PoleError,
    SingularSystem,
    PreconditionViolation,
    DegenerateBasis,
    Timeout,
    InvalidRequest,
    IoError,
};

class DtError : public std::runtime_error {
public:
    DtError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline DtError domain_error(const std::string& what) {
    return DtError(ErrorCode::DomainError, what);
}
inline DtError pole_error(const std::string& what) {
    return DtError(ErrorCode::PoleError, what);
}
inline DtError precondition_error(const std::string& what) {
    return DtError(ErrorCode::PreconditionViolation, what);
}

}  // namespace dtt

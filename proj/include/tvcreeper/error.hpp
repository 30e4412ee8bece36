#pragma once

#include <stdexcept>
#include <string>

namespace tvc {

enum class ErrorCode {
    Validation,
    FocusRequired,
    UnknownDestination,
    DestinationsUnreachable,
    Uncoverable,
    EmptyModel,
    StaleMutant,
    StaleArtifact,
    NoMutants,
};

/// Single exception type for all contract violations; code() drives CLI exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tvc

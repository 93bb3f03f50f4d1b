// error.hpp — Error type shared by every qmaps module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qmaps {

enum class ErrorCode {
    NonHermitianInput,
    DimensionMismatch,
    BadDimension,
    NotTraceless,
    NotOrthonormal,
    NotUnital,
    UnknownName,
    BadWeights,
    NegativeRate,
    NegativeTime,
    NoLimit,
    SingularMap,
    DegenerateRegion,
    BadInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace qmaps

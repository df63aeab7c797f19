#pragma once

#include <stdexcept>
#include <string>

namespace topolabel {

enum class Errc {
    EmptyInput,
    InvalidRadius,
    InvalidFiltration,
    InfiniteCoordinate,
    InvalidOrder,
    DimensionMismatch,
    ClassTooSmall,
    IngestError,
    InvalidArgument,
    OracleMismatch,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidRadius: return "InvalidRadius";
    case Errc::InvalidFiltration: return "InvalidFiltration";
    case Errc::InfiniteCoordinate: return "InfiniteCoordinate";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::IngestError: return "IngestError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OracleMismatch: return "OracleMismatch";
    }
    return "Unknown";
}

/// Library error with a machine-readable code. The CLI prints these as
/// "error: <code>: <message>" on stderr and exits with status 2.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code),
          message_(message) {}

    Errc code() const { return code_; }
    /// The message without the code prefix.
    const std::string& message() const { return message_; }

private:
    Errc code_;
    std::string message_;
};

} // namespace topolabel

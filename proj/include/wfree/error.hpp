#pragma once

#include <stdexcept>
#include <string>

namespace wfree {

enum class Errc {
    DivisionByZero,
    PoleAtPoint,
    DegreeTooHigh,
    AsymmetricPairing,
    UnpairedFermionHalf,
    UnknownSpecies,
    NonIntegralExponent,
    NonSymmetric,
    ShapeMismatch,
    MomentumMismatch,
    ZeroK1,
    ExcludedLevel,
    ParseError,
    ResourceLimit,
    IoError,
    InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace wfree

#pragma once

#include <stdexcept>
#include <string>

namespace primeperiod {

// Base class for every error raised by the library. `name()` is the stable
// identifier printed by the CLI on computation failures.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define PRIMEPERIOD_DEFINE_ERROR(Type, Name)                                  \
    class Type : public Error {                                               \
    public:                                                                   \
        explicit Type(const std::string& what) : Error(Name, what) {}         \
    }

PRIMEPERIOD_DEFINE_ERROR(InvalidArgumentError, "invalid-argument");
PRIMEPERIOD_DEFINE_ERROR(ResourceLimitError, "resource-limit");
PRIMEPERIOD_DEFINE_ERROR(TooShortInputError, "too-short-input");
PRIMEPERIOD_DEFINE_ERROR(DomainError, "domain-error");
PRIMEPERIOD_DEFINE_ERROR(NonMonotoneError, "non-monotone");
PRIMEPERIOD_DEFINE_ERROR(DivergenceError, "divergence");
PRIMEPERIOD_DEFINE_ERROR(NoPeakError, "no-peak");
PRIMEPERIOD_DEFINE_ERROR(NoMinimumError, "no-minimum");
PRIMEPERIOD_DEFINE_ERROR(ZeroVarianceError, "zero-variance");
PRIMEPERIOD_DEFINE_ERROR(WindowTooSmallError, "window-too-small");
PRIMEPERIOD_DEFINE_ERROR(NoLinearSegmentError, "no-linear-segment");
PRIMEPERIOD_DEFINE_ERROR(InsufficientPrimesError, "insufficient-primes");
PRIMEPERIOD_DEFINE_ERROR(IoError, "io-error");

#undef PRIMEPERIOD_DEFINE_ERROR

}  // namespace primeperiod

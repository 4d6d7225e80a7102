#pragma once

#include <stdexcept>
#include <string>

namespace phenosim {

// Base class for all library errors. `name()` is the stable error
// identifier the CLI prints on stderr (exit-code contract: data errors
// exit 1 with the error name).
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define PHENOSIM_DEFINE_ERROR(NAME)                      \
    class NAME : public Error {                          \
    public:                                              \
        explicit NAME(const std::string& what)           \
            : Error(#NAME, what) {}                      \
    };

PHENOSIM_DEFINE_ERROR(InvalidProbability)
PHENOSIM_DEFINE_ERROR(ConstraintInfeasible)
PHENOSIM_DEFINE_ERROR(RejectionBudgetExceeded)
PHENOSIM_DEFINE_ERROR(PiOutOfRange)
PHENOSIM_DEFINE_ERROR(MissingModelGenotype)
PHENOSIM_DEFINE_ERROR(ParseError)
PHENOSIM_DEFINE_ERROR(DimensionMismatch)
PHENOSIM_DEFINE_ERROR(UnknownValue)
PHENOSIM_DEFINE_ERROR(EmptyAfterFilter)
PHENOSIM_DEFINE_ERROR(NotMultipleOf20)
PHENOSIM_DEFINE_ERROR(EmptyRadius)
PHENOSIM_DEFINE_ERROR(EmptySample)
PHENOSIM_DEFINE_ERROR(PartialFailure)
PHENOSIM_DEFINE_ERROR(ConfigError)
PHENOSIM_DEFINE_ERROR(IoError)

#undef PHENOSIM_DEFINE_ERROR

} // namespace phenosim

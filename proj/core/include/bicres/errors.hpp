#pragma once

#include <stdexcept>
#include <string>

namespace bicres {

/// Base of every error raised by the library.
///
/// Two families exist: ValidationError for rejected inputs and
/// NumericalError for evaluations that cannot be carried out reliably.
/// The CLI maps them to exit codes 2 and 3.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    /// Short machine-readable tag, e.g. "SingularPotential".
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ValidationError : public Error {
public:
    using Error::Error;
    explicit ValidationError(const std::string& what) : Error("ValidationError", what) {}
};

class NumericalError : public Error {
public:
    using Error::Error;
};

#define BICRES_DEFINE_ERROR(Name, Base)                                  \
    class Name : public Base {                                           \
    public:                                                              \
        explicit Name(const std::string& what) : Base(#Name, what) {}    \
    }

BICRES_DEFINE_ERROR(NotBicMode, ValidationError);

BICRES_DEFINE_ERROR(SingularPotential, NumericalError);
BICRES_DEFINE_ERROR(NearSpectralSingularity, NumericalError);
BICRES_DEFINE_ERROR(DegenerateNormalizer, NumericalError);
BICRES_DEFINE_ERROR(UnwrapAmbiguity, NumericalError);
BICRES_DEFINE_ERROR(NoConvergence, NumericalError);
BICRES_DEFINE_ERROR(BoundaryZero, NumericalError);
BICRES_DEFINE_ERROR(AmbiguousWinding, NumericalError);
BICRES_DEFINE_ERROR(MaxDepthExceeded, NumericalError);
BICRES_DEFINE_ERROR(RootCountMismatch, NumericalError);
BICRES_DEFINE_ERROR(ZeroDerivative, NumericalError);
BICRES_DEFINE_ERROR(TrackingLost, NumericalError);
BICRES_DEFINE_ERROR(MinimaNotFound, NumericalError);
BICRES_DEFINE_ERROR(SingularFitSystem, NumericalError);

#undef BICRES_DEFINE_ERROR

}  // namespace bicres

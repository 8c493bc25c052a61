#pragma once

#include <stdexcept>
#include <string>

namespace platvol {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define PLATVOL_ERROR(Name)                                              \
    struct Name : Error {                                                \
        using Error::Error;                                              \
        explicit Name() : Error(#Name) {}                                \
        const char* kind() const noexcept override { return #Name; }     \
    }

PLATVOL_ERROR(LogAtMinusOne);
PLATVOL_ERROR(RankMismatch);
PLATVOL_ERROR(WordTooLong);
PLATVOL_ERROR(NotAKnot);
PLATVOL_ERROR(ParseError);
PLATVOL_ERROR(ReducibleOrbit);
PLATVOL_ERROR(Reducible);
PLATVOL_ERROR(NotARepresentation);
PLATVOL_ERROR(ConstraintViolated);
PLATVOL_ERROR(NoConvergence);
PLATVOL_ERROR(ConvergedToReducible);
PLATVOL_ERROR(StepCollapse);
PLATVOL_ERROR(InconsistentRegularity);
PLATVOL_ERROR(NotRegular);
PLATVOL_ERROR(DegenerateBasis);
PLATVOL_ERROR(DivergentTail);
PLATVOL_ERROR(NonCyclicAbelianization);
PLATVOL_ERROR(MatchingFailure);
PLATVOL_ERROR(CorruptCache);
PLATVOL_ERROR(DomainError);

#undef PLATVOL_ERROR

// Thrown by trace_axis; the angle is still meaningful even though the axis is not.
struct CentralElement : Error {
    double theta;
    explicit CentralElement(double th)
        : Error("CentralElement"), theta(th) {}
    const char* kind() const noexcept override { return "CentralElement"; }
};

}  // namespace platvol

#pragma once

#include <stdexcept>
#include <string>

namespace bop {

// Base of every error the library raises. kind() is the stable name used in
// machine-readable CLI error objects.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept = 0;
};

#define BOP_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        using Error::Error;                                                 \
        const char* kind() const noexcept override { return #Name; }        \
    }

BOP_DEFINE_ERROR(MomentError);
BOP_DEFINE_ERROR(InsufficientMoments);
BOP_DEFINE_ERROR(NotExact);
BOP_DEFINE_ERROR(KindMismatch);
BOP_DEFINE_ERROR(DegreeError);
BOP_DEFINE_ERROR(NotPositiveDefinite);
BOP_DEFINE_ERROR(BadFactor);
BOP_DEFINE_ERROR(NotCheckerboard);
BOP_DEFINE_ERROR(NotRepresentable);
BOP_DEFINE_ERROR(ConditioningError);
BOP_DEFINE_ERROR(NotSymmetric);
BOP_DEFINE_ERROR(DependentConstraints);
BOP_DEFINE_ERROR(MeasureMismatch);
BOP_DEFINE_ERROR(DimensionCap);
BOP_DEFINE_ERROR(InsufficientNodes);
BOP_DEFINE_ERROR(NonPositiveParameter);
BOP_DEFINE_ERROR(DependentBasis);
BOP_DEFINE_ERROR(IndexOutOfRange);
BOP_DEFINE_ERROR(ParseError);

#undef BOP_DEFINE_ERROR

}  // namespace bop

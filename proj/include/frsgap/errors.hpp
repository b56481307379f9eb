#pragma once

#include <stdexcept>
#include <string>

namespace frsgap {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define FRSGAP_DEFINE_ERROR(NAME)                                    \
    struct NAME : Error {                                            \
        explicit NAME(const std::string& what) : Error(what) {}      \
    }

// Field / rational arithmetic.
FRSGAP_DEFINE_ERROR(DivisionByZero);
FRSGAP_DEFINE_ERROR(ContextMismatch);
FRSGAP_DEFINE_ERROR(NotPrime);
FRSGAP_DEFINE_ERROR(OverflowError);

// Polynomials and linear algebra.
FRSGAP_DEFINE_ERROR(DuplicateNode);
FRSGAP_DEFINE_ERROR(ShapeError);
FRSGAP_DEFINE_ERROR(IndexError);

// Code parameter validation.
FRSGAP_DEFINE_ERROR(InvalidParameter);
FRSGAP_DEFINE_ERROR(OrderTooSmall);
FRSGAP_DEFINE_ERROR(PointCollision);
FRSGAP_DEFINE_ERROR(DegreeOverflow);
FRSGAP_DEFINE_ERROR(FieldTooSmall);
FRSGAP_DEFINE_ERROR(EnumerationTooLarge);
FRSGAP_DEFINE_ERROR(NotACodeword);

// Subspace-design checks.
FRSGAP_DEFINE_ERROR(InvalidBasepoint);
FRSGAP_DEFINE_ERROR(DesignPreconditionViolated);
FRSGAP_DEFINE_ERROR(ZeroPolynomial);

// Decoder.
FRSGAP_DEFINE_ERROR(InterpolationInfeasible);

// Pinned-coordinate sampling.
FRSGAP_DEFINE_ERROR(DegenerateSubspace);

// Line stitching and peeling.
FRSGAP_DEFINE_ERROR(PreconditionFailed);
FRSGAP_DEFINE_ERROR(ClusterTooLarge);
FRSGAP_DEFINE_ERROR(StitchFailed);

// Experiment harness.
FRSGAP_DEFINE_ERROR(ConfigError);

#undef FRSGAP_DEFINE_ERROR

}  // namespace frsgap

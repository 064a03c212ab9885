#pragma once

#include <stdexcept>
#include <string>

namespace attractorlab {

/// Base class for every failure raised by the library. The concrete type names
/// the failure class; the message carries the details.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define ATTRACTORLAB_ERROR(Name)                  \
    class Name : public Error {                   \
    public:                                       \
        using Error::Error;                       \
    }

ATTRACTORLAB_ERROR(DimensionMismatch);
ATTRACTORLAB_ERROR(NearSingular);
ATTRACTORLAB_ERROR(NonUnique);
ATTRACTORLAB_ERROR(NoFixedPoint);
ATTRACTORLAB_ERROR(BadIndex);
ATTRACTORLAB_ERROR(ConvergenceFailure);
ATTRACTORLAB_ERROR(BudgetExceeded);
ATTRACTORLAB_ERROR(Degenerate);
ATTRACTORLAB_ERROR(EmptySet);
ATTRACTORLAB_ERROR(RelatorViolated);
ATTRACTORLAB_ERROR(MismatchedGroup);
ATTRACTORLAB_ERROR(InvalidArgument);

#undef ATTRACTORLAB_ERROR

}  // namespace attractorlab

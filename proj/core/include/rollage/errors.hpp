#ifndef ROLLAGE_ERRORS_HPP
#define ROLLAGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rollage {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ROLLAGE_DEFINE_ERROR(Name)          \
    struct Name : Error {                   \
        using Error::Error;                 \
    }

ROLLAGE_DEFINE_ERROR(NonFiniteCoefficient);
ROLLAGE_DEFINE_ERROR(ZeroLeadingCoefficient);
ROLLAGE_DEFINE_ERROR(InvalidModel);
ROLLAGE_DEFINE_ERROR(SingularSystem);
ROLLAGE_DEFINE_ERROR(InsufficientLags);
ROLLAGE_DEFINE_ERROR(OrderMismatch);
ROLLAGE_DEFINE_ERROR(RejectionBudgetExhausted);
ROLLAGE_DEFINE_ERROR(RankDeficientDesign);
ROLLAGE_DEFINE_ERROR(SeriesTooShort);
ROLLAGE_DEFINE_ERROR(LagTooLarge);
ROLLAGE_DEFINE_ERROR(NonPositiveDefiniteAcf);
ROLLAGE_DEFINE_ERROR(PbarTooLarge);
ROLLAGE_DEFINE_ERROR(PbarTooSmall);
ROLLAGE_DEFINE_ERROR(CriterionFailed);
ROLLAGE_DEFINE_ERROR(ZeroTruthNorm);
ROLLAGE_DEFINE_ERROR(InvalidArgument);
ROLLAGE_DEFINE_ERROR(IoError);

#undef ROLLAGE_DEFINE_ERROR

}  // namespace rollage

#endif

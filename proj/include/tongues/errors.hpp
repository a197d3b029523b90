#pragma once

#include <stdexcept>
#include <string>

namespace tongues {

/// Base of every library error. `kind()` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    [[nodiscard]] const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define TONGUES_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                        \
    public:                                                            \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

// Caller violated a documented precondition.
TONGUES_DEFINE_ERROR(PreconditionViolation);
TONGUES_DEFINE_ERROR(ParseError);
TONGUES_DEFINE_ERROR(NotMonotone);
// Certified numerics could not decide a sign at the current resolution.
TONGUES_DEFINE_ERROR(Unresolved);
TONGUES_DEFINE_ERROR(OrbitHitsBreakpoint);
TONGUES_DEFINE_ERROR(PieceLimitExceeded);
TONGUES_DEFINE_ERROR(ConstantForcing);
TONGUES_DEFINE_ERROR(AmbiguousReduction);
TONGUES_DEFINE_ERROR(EmptyCell);
TONGUES_DEFINE_ERROR(JOutOfRange);
TONGUES_DEFINE_ERROR(NotPinch);
TONGUES_DEFINE_ERROR(NotExactPinch);
TONGUES_DEFINE_ERROR(TooManySets);
TONGUES_DEFINE_ERROR(BudgetExhausted);
TONGUES_DEFINE_ERROR(DegenerateFactor);

#undef TONGUES_DEFINE_ERROR

}  // namespace tongues

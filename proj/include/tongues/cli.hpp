#pragma once

#include <iosfwd>

namespace tongues::cli {

/// Entry point for the tongues command line. Exit codes: 0 success, 1 domain
/// error (NotPinch and friends), 2 parse error, 3 Unresolved or
/// BudgetExhausted. Errors are reported as one JSON object on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tongues::cli

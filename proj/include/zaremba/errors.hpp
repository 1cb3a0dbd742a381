#pragma once

#include <stdexcept>
#include <string>

namespace zaremba {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ZAREMBA_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

// Fraction outside (0,1) or not in lowest terms.
ZAREMBA_DEFINE_ERROR(InvalidFraction);
// Quotient list that is not (or cannot be made) a canonical expansion.
ZAREMBA_DEFINE_ERROR(MalformedSequence);
ZAREMBA_DEFINE_ERROR(FoldPreconditionViolated);
// The folding lemma guarantees reducedness; seeing this means a bug.
ZAREMBA_DEFINE_ERROR(NotReduced);
ZAREMBA_DEFINE_ERROR(BadParameters);
ZAREMBA_DEFINE_ERROR(EvenInput);
ZAREMBA_DEFINE_ERROR(ScheduleMismatch);
ZAREMBA_DEFINE_ERROR(ConditionViolated);
ZAREMBA_DEFINE_ERROR(NoBaseWitness);
ZAREMBA_DEFINE_ERROR(MalformedCertificate);

#undef ZAREMBA_DEFINE_ERROR

}  // namespace zaremba

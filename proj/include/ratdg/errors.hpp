#pragma once

#include <stdexcept>
#include <string>

namespace ratdg {

// Every domain error carries a stable name that the CLI prints verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define RATDG_ERROR(Name)                                             \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

RATDG_ERROR(AxiomViolation);
RATDG_ERROR(NonSplitAlgebra);
RATDG_ERROR(TruncationTooLarge);
RATDG_ERROR(DegreeMismatch);
RATDG_ERROR(NotMaurerCartan);
RATDG_ERROR(NotNilpotent);
RATDG_ERROR(OddDegreeUnit);
RATDG_ERROR(NonCocycle);
RATDG_ERROR(NoAugmentation);
RATDG_ERROR(IncompleteSolve);

#undef RATDG_ERROR

}  // namespace ratdg

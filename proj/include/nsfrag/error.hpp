#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsfrag {

// Base of every error raised by the engine. The CLI maps ParseError to exit
// code 3 and every DomainError to exit code 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ZeroDenominatorLiteral : public ParseError {
 public:
  using ParseError::ParseError;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

#define NSFRAG_DOMAIN_ERROR(Name)        \
  class Name : public DomainError {      \
   public:                               \
    using DomainError::DomainError;      \
  }

NSFRAG_DOMAIN_ERROR(DivisionByZero);
NSFRAG_DOMAIN_ERROR(ZeroGermError);
NSFRAG_DOMAIN_ERROR(DegenerateDiagonal);
NSFRAG_DOMAIN_ERROR(MalformedFormula);
NSFRAG_DOMAIN_ERROR(UniverseMismatch);
NSFRAG_DOMAIN_ERROR(NonMonotoneGenerator);
NSFRAG_DOMAIN_ERROR(NotFinite);
NSFRAG_DOMAIN_ERROR(NotInCarrier);
NSFRAG_DOMAIN_ERROR(StructureMismatch);
NSFRAG_DOMAIN_ERROR(ModulusViolation);
NSFRAG_DOMAIN_ERROR(NotDisjoint);
NSFRAG_DOMAIN_ERROR(OutOfAlgebra);
NSFRAG_DOMAIN_ERROR(ModeViolation);
NSFRAG_DOMAIN_ERROR(NoClosedForm);
NSFRAG_DOMAIN_ERROR(TypeMismatch);
NSFRAG_DOMAIN_ERROR(InvalidArgument);

#undef NSFRAG_DOMAIN_ERROR

}  // namespace nsfrag

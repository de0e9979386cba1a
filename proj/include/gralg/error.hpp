#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "gralg/report.hpp"

namespace gralg {

/// Base class of all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Precondition violations: out-of-range offsets, mismatched groups, labels
/// outside the equivalence relation, and the like.
struct DomainError : Error {
  using Error::Error;
};

/// A construction refused its input; the report lists the failed clauses.
struct ConstructionError : Error {
  ConditionReport report;

  ConstructionError(const std::string& what, ConditionReport rep)
      : Error(what + "\n" + rep.to_string()), report(std::move(rep)) {}
};

/// Errors in the text file formats; line is 1-based.
struct ParseError : Error {
  int line;

  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

}  // namespace gralg

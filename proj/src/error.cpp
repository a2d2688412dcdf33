#include "ostr/error.hpp"

namespace ostr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ill_formed_term: return "IllFormedTerm";
    case ErrorCode::ambiguous_sort: return "AmbiguousSort";
    case ErrorCode::unbound_variable: return "UnboundVariable";
    case ErrorCode::sort_violation: return "SortViolation";
    case ErrorCode::inconsistent_annotation: return "InconsistentAnnotation";
    case ErrorCode::cycle_detected: return "CycleDetected";
    case ErrorCode::unknown_sort: return "UnknownSort";
    case ErrorCode::not_strictly_sensible: return "NotStrictlySensible";
    case ErrorCode::invalid_algebra: return "InvalidAlgebra";
    case ErrorCode::rename_collision: return "RenameCollision";
    case ErrorCode::no_path: return "NoPath";
    case ErrorCode::untranslatable_sort: return "UntranslatableSort";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::duplicate_declaration: return "DuplicateDeclaration";
    case ErrorCode::cast_name_reserved: return "CastNameReserved";
    case ErrorCode::not_in_image: return "NotInImage";
  }
  return "Unknown";
}

static std::string decorate(ErrorCode code, const std::string& message, SourceSpan span) {
  std::string out(error_code_name(code));
  if (span.line != 0) {
    out += " at " + std::to_string(span.line) + ":" + std::to_string(span.column);
  }
  out += ": " + message;
  return out;
}

Error::Error(ErrorCode code, const std::string& message, SourceSpan span)
    : std::runtime_error(decorate(code, message, span)), code_(code), span_(span), detail_(message) {}

}  // namespace ostr

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ostr {

enum class ErrorCode {
  ill_formed_term,
  ambiguous_sort,
  unbound_variable,
  sort_violation,
  inconsistent_annotation,
  cycle_detected,
  unknown_sort,
  not_strictly_sensible,
  invalid_algebra,
  rename_collision,
  no_path,
  untranslatable_sort,
  budget_exceeded,
  syntax_error,
  duplicate_declaration,
  cast_name_reserved,
  not_in_image,
};

std::string_view error_code_name(ErrorCode code);

/// Source location of a diagnostic; line and column are 1-based, 0 means unknown.
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourceSpan span = {});

  ErrorCode code() const noexcept { return code_; }
  SourceSpan span() const noexcept { return span_; }
  /// The message without the code and location prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  SourceSpan span_;
  std::string detail_;
};

}  // namespace ostr

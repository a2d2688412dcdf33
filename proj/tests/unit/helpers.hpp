#pragma once

#include <optional>
#include <string>

#include "ostr/specfmt.hpp"
#include "ostr/translation.hpp"

namespace test {

inline const ostr::OSAlgebra& imp() {
  static const ostr::OSAlgebra alg = ostr::imp_algebra();
  return alg;
}

inline const ostr::OSAlgebra& imp_real() {
  static const ostr::OSAlgebra alg = ostr::imp_real_algebra();
  return alg;
}

inline const ostr::Translation& imp_tr() {
  static const ostr::Translation tr = ostr::translate_algebra(imp());
  return tr;
}

inline const ostr::Translation& imp_real_tr() {
  static const ostr::Translation tr = ostr::translate_algebra(imp_real());
  return tr;
}

inline ostr::GroundTerm os(const std::string& text, const ostr::OSAlgebra& alg = imp()) {
  return ostr::parse_ground_term(text, alg.signature.table());
}

inline ostr::GroundTerm ms(const std::string& text, const ostr::Translation& tr = imp_tr()) {
  return ostr::parse_ground_term(text, tr.algebra.signature.table());
}

inline ostr::PatternTerm pat(const std::string& text, const ostr::OperatorTable& table = imp().signature.table()) {
  return ostr::elaborate_term(ostr::parse_spec_term(text), table);
}

inline ostr::PatternTerm mpat(const std::string& text, const ostr::Translation& tr = imp_tr()) {
  return pat(text, tr.algebra.signature.table());
}

inline ostr::Sort S(const char* name) { return ostr::Sort(name); }

}  // namespace test

namespace test {

/// Code of the ostr::Error thrown by f, if any.
template <typename F>
std::optional<ostr::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const ostr::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace test

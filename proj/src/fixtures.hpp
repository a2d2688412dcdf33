#pragma once

namespace ostr::fixtures {

extern const char* const imp_osa;
extern const char* const imp_real_osa;

}  // namespace ostr::fixtures

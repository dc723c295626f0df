#pragma once

namespace sqc {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "sqc-report/1";

}  // namespace sqc

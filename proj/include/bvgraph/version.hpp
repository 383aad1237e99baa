#pragma once

namespace bvg {

inline constexpr const char* kToolName = "bvgraph";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace bvg

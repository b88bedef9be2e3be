#pragma once

namespace qh {

// bump whenever a convention or output format changes; cache keys include it
inline constexpr const char* kEngineVersion = "1.0.0";

}  // namespace qh

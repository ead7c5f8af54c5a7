#pragma once

namespace coindex {

/// Version tag stamped into every JSON document this library emits.
inline constexpr const char* kSchemaVersion = "coindex/1";

}  // namespace coindex

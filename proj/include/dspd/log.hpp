#pragma once

#include <functional>
#include <string_view>

namespace dspd::log {

using Sink = std::function<void(std::string_view)>;

/// Emits a warning through the installed sink (stderr by default). Thread-safe.
void warn(std::string_view message);

/// Replaces the warning sink and returns the previous one. An empty sink silences warnings.
Sink set_warning_sink(Sink sink);

} // namespace dspd::log

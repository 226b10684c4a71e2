#include "dspd/log.hpp"

#include <iostream>
#include <mutex>

namespace dspd::log {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

Sink& current_sink() {
    static Sink sink = [](std::string_view message) { std::cerr << "warning: " << message << '\n'; };
    return sink;
}

} // namespace

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex());
    if (current_sink()) {
        current_sink()(message);
    }
}

Sink set_warning_sink(Sink sink) {
    std::lock_guard lock(sink_mutex());
    std::swap(current_sink(), sink);
    return sink;
}

} // namespace dspd::log

#include "biphoton/warnings.hpp"

#include <cstdio>
#include <mutex>
#include <utility>

namespace biphoton {

namespace {

std::mutex g_mutex;
WarningHandler g_handler; // empty = default stderr sink

void default_sink(const std::string& message) {
    std::fprintf(stderr, "warning: %s\n", message.c_str());
}

} // namespace

void emit_warning(const std::string& message) {
    WarningHandler h;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        h = g_handler;
    }
    if (h)
        h(message);
    else
        default_sink(message);
}

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(g_mutex);
    return std::exchange(g_handler, std::move(handler));
}

} // namespace biphoton

#pragma once

#include <functional>
#include <string>

namespace biphoton {

// Non-fatal diagnostics (grid coverage too small, truncated dips, ...) go
// through a process-wide handler. Default writes "warning: ..." to stderr;
// tests install a capturing handler.
using WarningHandler = std::function<void(const std::string&)>;

void emit_warning(const std::string& message);

// Returns the previous handler. Passing nullptr restores the default.
WarningHandler set_warning_handler(WarningHandler handler);

} // namespace biphoton

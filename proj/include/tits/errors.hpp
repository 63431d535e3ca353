#pragma once

#include <stdexcept>
#include <string>

namespace tits {

// Invalid inputs to a total operation (element outside the domain).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rejected configuration; `key` names the offending field when known.
struct config_error : std::runtime_error {
    std::string key;
    config_error(const std::string& k, const std::string& msg)
        : std::runtime_error(k.empty() ? msg : k + ": " + msg), key(k) {}
};

// Truncated Laurent arithmetic ran out of known digits.
struct precision_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tits

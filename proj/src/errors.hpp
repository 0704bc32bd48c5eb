#pragma once

#include <stdexcept>
#include <string>

namespace lzdg {

// thrown for arguments that violate an operation's preconditions
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// thrown when a configured size cap would be exceeded
struct resource_limit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown when an internal consistency assertion fails; indicates a bug
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// thrown when a file cannot be read or written
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw invalid_input(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw invalid_input(msg);
}

inline void check_internal(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
}

} // namespace lzdg

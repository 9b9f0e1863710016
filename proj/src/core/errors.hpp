#pragma once

#include <stdexcept>
#include <string>

namespace caea {

// Error taxonomy, mirrored by the C API status codes and CLI exit codes:
// config errors (bad parameters), data errors (bad inputs / files),
// invalid state (operation on an unready object), internal (broken
// invariant).

class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

class invalid_state : public std::logic_error {
public:
    explicit invalid_state(const std::string& what) : std::logic_error(what) {}
};

class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace caea

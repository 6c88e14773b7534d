#pragma once

#include <stdexcept>
#include <string>

namespace windsim {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid or inconsistent run configuration (CLI exit code 2).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Malformed, missing or out-of-domain input data (CLI exit code 3).
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int data = 3;
inline constexpr int internal = 4;
}  // namespace exit_code

}  // namespace windsim

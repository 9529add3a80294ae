#pragma once

#include <stdexcept>
#include <string>

namespace hrf {

// File contents that do not match a documented on-disk format.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Inputs that parse fine but violate a semantic contract
// (connectivity, ranges, dimensions, degenerate data).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem-level failures: missing file, unwritable path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad pipeline configuration (CLI flags, incompatible options).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hrf

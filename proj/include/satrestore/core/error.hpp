#pragma once

#include <stdexcept>
#include <string>

namespace satrestore {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file. `location()` names the offending row or byte offset.
class ParseError : public Error {
public:
    ParseError(std::string source, std::string location, const std::string& what)
        : Error(source + " (" + location + "): " + what),
          source_(std::move(source)),
          location_(std::move(location)) {}

    const std::string& source() const noexcept { return source_; }
    const std::string& location() const noexcept { return location_; }

private:
    std::string source_;
    std::string location_;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

}  // namespace satrestore

#pragma once

#include <stdexcept>
#include <string>

namespace syang {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    std::size_t offset;
    ParseError(const std::string& msg, std::size_t off)
        : Error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

}  // namespace syang

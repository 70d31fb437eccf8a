#include "polyframe/error.hpp"

namespace polyframe {

ParseError::ParseError(const std::string& message, std::size_t position,
                       std::vector<std::string> expected)
    : Error(message), position_(position), expected_(std::move(expected)) {}

}  // namespace polyframe

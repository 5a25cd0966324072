#include "carnot/errors.hpp"

namespace carnot {

ParseError::ParseError(const std::string& message, std::size_t position)
    : InputError(message + " at position " + std::to_string(position)),
      position_(position) {}

}  // namespace carnot

#pragma once

#include <stdexcept>
#include <string>

namespace starpi {

// Domain error for precondition violations, malformed input, and budget overruns.
// Every throwing operation in the library throws this type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace starpi

#pragma once

#include <stdexcept>
#include <string>

namespace opbeam {

/**
 * Raised when a scenario document or a spec struct fails validation.
 * The message names the offending field path and the observed value so a
 * user can fix the input without reading library source.
 */
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::string message)
        : std::runtime_error(std::move(message)) {}
};

}  // namespace opbeam

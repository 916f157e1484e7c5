#pragma once

#include <stdexcept>
#include <string>

namespace naq {

/// Thrown when an iterative scheme fails to converge or a state blows up.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace naq

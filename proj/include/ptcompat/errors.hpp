#ifndef PTCOMPAT_ERRORS_HPP
#define PTCOMPAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ptc {

/// Malformed or inconsistent caller input (bad shapes, mismatched theories,
/// values outside their domain).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal result failed its own exact re-check. Seeing this is a bug.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ptc

#endif

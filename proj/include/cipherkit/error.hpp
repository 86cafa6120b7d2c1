#ifndef CIPHERKIT_ERROR_HPP
#define CIPHERKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cipherkit {

// Operand shapes or lengths do not line up.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but outside the domain of the operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Textual input could not be parsed.
class format_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested work exceeds a hard cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A randomized search gave up.
class search_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cipherkit

#endif

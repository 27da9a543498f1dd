#pragma once

#include <stdexcept>
#include <string>

namespace qchrom {

/// Malformed or inconsistent input: bad graphs, wrong shapes, invalid files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation reached a state that valid input cannot produce.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace qchrom

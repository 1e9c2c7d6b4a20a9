#pragma once

#include <stdexcept>
#include <string>

namespace connexion {

// Base of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed request that has no answer in the mathematical domain:
// a non-principal divisor where a witness is demanded, a pole of order
// two where a third-kind form is required, and so on.
class domain_error : public error {
public:
    using error::error;
};

// Malformed input: unparsable expressions, points off the curve,
// singular cubics, duplicated punctures.
class input_error : public error {
public:
    using error::error;
};

// The computation is well defined but falls outside what the library
// supports (e.g. a divisor whose support is not Q-rational).
class unsupported_error : public domain_error {
public:
    using domain_error::domain_error;
};

} // namespace connexion

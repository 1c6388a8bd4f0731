#pragma once

#include <stdexcept>
#include <string>

namespace mee {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input or a formula that references unknown symbols.
class ParseError : public Error {
public:
    using Error::Error;
};

// Well-formed input that violates a model invariant (arity mismatch, empty
// relation, duplicate names...).
class ModelError : public Error {
public:
    using Error::Error;
};

// An exhaustive operation would exceed a configured cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

// The input's language or basis does not admit the requested algorithm.
class ClassificationError : public Error {
public:
    using Error::Error;
};

// A minimizer produced a clause shape the target language cannot express.
class VocabularyError : public Error {
public:
    using Error::Error;
};

}  // namespace mee

#ifndef INFLUGRAPH_ERRORS_HPP_
#define INFLUGRAPH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace influgraph {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed caller input (empty label, bad enum value, ...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A construct influencing itself is not representable.
class SelfInfluenceError : public Error {
public:
    using Error::Error;
};

/// Node id does not exist in the graph.
class MissingNodeError : public Error {
public:
    using Error::Error;
};

/// Input text contained nothing usable.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

/// The measure is undefined on this graph (e.g. eigenvector on an edgeless graph).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Solver parameter outside its admissible range.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// Edge weight outside the range an algorithm requires.
class InvalidWeightError : public Error {
public:
    using Error::Error;
};

/// Two inputs that must describe the same node set do not.
class InconsistentInputError : public Error {
public:
    using Error::Error;
};

} // namespace influgraph

#endif // INFLUGRAPH_ERRORS_HPP_

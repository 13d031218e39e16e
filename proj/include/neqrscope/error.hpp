#ifndef NEQRSCOPE_ERROR_HPP
#define NEQRSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace neqrscope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A basic gate refers to a qubit outside the register, or its target is also a control.
class InvalidGate : public Error {
public:
    using Error::Error;
};

/// The dense reference simulator was asked for a register it cannot materialize.
class OracleUnavailable : public Error {
public:
    using Error::Error;
};

/// A circuit builder received an out-of-range position, mask or index.
class BuilderError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

/// Bad bin counts, mismatched lengths or layouts in the metrics.
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// Malformed circuit/analysis documents and image files.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace neqrscope

#endif

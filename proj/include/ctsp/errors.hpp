#pragma once

#include <stdexcept>
#include <string>

namespace ctsp {

// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text that does not fall under a more specific category.
class ParseError : public Error {
public:
    using Error::Error;
};

// Instance file lacks a required section (cluster section, coord section...).
class MissingSection : public ParseError {
public:
    using ParseError::ParseError;
};

// A vertex appears in zero clusters or in more than one.
class PartitionError : public ParseError {
public:
    using ParseError::ParseError;
};

// Declared DIMENSION disagrees with the data actually listed.
class DimensionMismatch : public ParseError {
public:
    using ParseError::ParseError;
};

class UnsupportedEdgeWeightType : public ParseError {
public:
    using ParseError::ParseError;
};

// distance(i, i) was queried.
class SelfLoop : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

// A dominance-safe big-M is not representable in 64-bit arithmetic.
class Overflow : public Error {
public:
    using Error::Error;
};

// recover_cost received a cost below m*M: the tour was not cluster-feasible.
class NegativeResult : public Error {
public:
    using Error::Error;
};

class NotAPermutation : public Error {
public:
    using Error::Error;
};

class VertexSetMismatch : public Error {
public:
    using Error::Error;
};

class EmptyCycles : public Error {
public:
    using Error::Error;
};

class InconsistentESet : public Error {
public:
    using Error::Error;
};

// Resource guard tripped (enumeration space, export size...).
class TooLarge : public Error {
public:
    using Error::Error;
};

class ZeroReference : public Error {
public:
    using Error::Error;
};

class NonPositiveMetric : public Error {
public:
    using Error::Error;
};

} // namespace ctsp

#pragma once

#include <stdexcept>
#include <string>

namespace thermsched {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The task graph contains a directed cycle (self-loops included).
class CycleError : public Error {
public:
  using Error::Error;
};

/// An edge or record refers to an entity that does not exist.
class RefError : public Error {
public:
  using Error::Error;
};

/// A document or argument is malformed.
class FormatError : public Error {
public:
  using Error::Error;
};

/// The requested object cannot exist (e.g. too many edges for a DAG).
class InfeasibleError : public Error {
public:
  using Error::Error;
};

/// Degenerate, overlapping or out-of-bounds floorplan geometry.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// The thermal system could not be solved.
class SingularError : public Error {
public:
  using Error::Error;
};

} // namespace thermsched

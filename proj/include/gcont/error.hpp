#pragma once

#include <stdexcept>
#include <string>

namespace gcont {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad argument: index out of range, unsupported order, wrong row length
struct ArgumentError : Error {
  using Error::Error;
};

// tangent vectors linearly dependent somewhere on an edge
struct DegenerateParametrizationError : Error {
  using Error::Error;
};

// |lambda| below lambda_min
struct DegenerateLinkError : Error {
  using Error::Error;
};

// input configuration does not meet a construction's requirements
struct PreconditionError : Error {
  using Error::Error;
};

// a quantity computed two ways disagrees
struct ConsistencyError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace gcont

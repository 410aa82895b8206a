#pragma once

#include <stdexcept>
#include <string>

namespace torq {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotStrictlyConvex : Error {
  using Error::Error;
};
struct FaceToFaceViolation : Error {
  using Error::Error;
};
struct SymmetryViolation : Error {
  using Error::Error;
};
struct TripleConditionViolation : Error {
  using Error::Error;
};
struct NotSubfan : Error {
  using Error::Error;
};
struct PreconditionViolated : Error {
  using Error::Error;
};
struct IterationCapExceeded : Error {
  using Error::Error;
};
struct NotSaturated : Error {
  using Error::Error;
};
struct SchemaError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace torq

#pragma once

#include <stdexcept>
#include <string>

namespace morpho {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  EmptyResult,
  EmptySet,
  RadiusTooLarge,
  InvalidRadius,
  TruncationTooLarge,
  WindowTooSmall,
  NonpositiveScale,
  EmptyInput,
  EmptyOverlap,
  UnsupportedDimension,
  BadAngles,
  BadRatio,
  InvalidSides,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::InvalidRadius: return "InvalidRadius";
    case ErrorKind::TruncationTooLarge: return "TruncationTooLarge";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::EmptyOverlap: return "EmptyOverlap";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::BadAngles: return "BadAngles";
    case ErrorKind::BadRatio: return "BadRatio";
    case ErrorKind::InvalidSides: return "InvalidSides";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace morpho

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnet {

enum class ErrorKind {
  PortConflict,
  ArityMismatch,
  DanglingEndpoint,
  DuplicateLabel,
  BadTensor,
  TooLarge,
  NotALoop,
  IndexOutOfRange,
  EmptyWeights,
  BadArity,
  HasExternalEdges,
  NonSymmetricHighDegree,
  NotPlanarInput,
  RankOverflow,
  SyntaxError,
  HeaderMismatch,
  Io,
};

std::string_view to_string(ErrorKind kind);

// All recoverable failures of the library surface as this exception; the
// kind lets callers (the CLI in particular) map them to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PortConflict: return "PortConflict";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::BadTensor: return "BadTensor";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotALoop: return "NotALoop";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyWeights: return "EmptyWeights";
    case ErrorKind::BadArity: return "BadArity";
    case ErrorKind::HasExternalEdges: return "HasExternalEdges";
    case ErrorKind::NonSymmetricHighDegree: return "NonSymmetricHighDegree";
    case ErrorKind::NotPlanarInput: return "NotPlanarInput";
    case ErrorKind::RankOverflow: return "RankOverflow";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::HeaderMismatch: return "HeaderMismatch";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace tnet

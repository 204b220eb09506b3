#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sprev {

enum class Errc {
  // datasets
  MissingLabelColumn,
  NonNumericCell,
  NonFiniteValue,
  RaggedRow,
  EmptyDataset,
  BadMagic,
  CountMismatch,
  TruncatedFile,
  FileOpen,
  TooManyClassesRequested,
  EmptyAfterCull,
  InvalidDataset,
  // metrics / shapes
  DimensionMismatch,
  ZeroVectorCosine,
  ShapeMismatch,
  // core
  EmptyClass,
  CentroidAtCenter,
  InvalidConfig,
  // layout
  NumTooSmall,
  TooFewClasses,
  NonConvexRow,
  // bench
  ClassSmallerThanFolds,
  KTooLarge,
  ConvergenceFailure,
  // render
  TooFewPoints,
  NonMonotonicX,
  NonPositiveX,
  // cli
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure the library reports. `code()` identifies the contract that
/// was violated; `what()` carries a one-line human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Non-fatal diagnostics (constant columns, degenerate PCA input). The default
// handler writes "warning: <msg>" to stderr.
using WarningHandler = std::function<void(std::string_view)>;

void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace sprev

#include "sprev/error.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace sprev {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MissingLabelColumn: return "MissingLabelColumn";
    case Errc::NonNumericCell: return "NonNumericCell";
    case Errc::NonFiniteValue: return "NonFiniteValue";
    case Errc::RaggedRow: return "RaggedRow";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::BadMagic: return "BadMagic";
    case Errc::CountMismatch: return "CountMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::FileOpen: return "FileOpen";
    case Errc::TooManyClassesRequested: return "TooManyClassesRequested";
    case Errc::EmptyAfterCull: return "EmptyAfterCull";
    case Errc::InvalidDataset: return "InvalidDataset";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroVectorCosine: return "ZeroVectorCosine";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptyClass: return "EmptyClass";
    case Errc::CentroidAtCenter: return "CentroidAtCenter";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::NumTooSmall: return "NumTooSmall";
    case Errc::TooFewClasses: return "TooFewClasses";
    case Errc::NonConvexRow: return "NonConvexRow";
    case Errc::ClassSmallerThanFolds: return "ClassSmallerThanFolds";
    case Errc::KTooLarge: return "KTooLarge";
    case Errc::ConvergenceFailure: return "ConvergenceFailure";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NonMonotonicX: return "NonMonotonicX";
    case Errc::NonPositiveX: return "NonPositiveX";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler_slot() {
  static WarningHandler h;
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(handler_mutex());
  handler_slot() = std::move(handler);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler_slot()) {
    handler_slot()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace sprev

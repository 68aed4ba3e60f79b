#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hctps {

enum class ErrorKind {
  UnknownFunction,
  NonFiniteInput,
  BudgetExhausted,
  LengthMismatch,
  EmptyPopulation,
  MissingFitness,
  InsufficientOffspring,
  WrongDimension,
  DegenerateBox,
  InvalidConfig,
  EmptySample,
  NoPhases,
  MismatchedExperiment,
  CorruptRecord,
  AlreadyRan,
  UnknownExperiment,
  UnknownJob,
  GlobalPending,
  JobInFlight,
  Frozen,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyPopulation: return "EmptyPopulation";
    case ErrorKind::MissingFitness: return "MissingFitness";
    case ErrorKind::InsufficientOffspring: return "InsufficientOffspring";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::DegenerateBox: return "DegenerateBox";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::NoPhases: return "NoPhases";
    case ErrorKind::MismatchedExperiment: return "MismatchedExperiment";
    case ErrorKind::CorruptRecord: return "CorruptRecord";
    case ErrorKind::AlreadyRan: return "AlreadyRan";
    case ErrorKind::UnknownExperiment: return "UnknownExperiment";
    case ErrorKind::UnknownJob: return "UnknownJob";
    case ErrorKind::GlobalPending: return "GlobalPending";
    case ErrorKind::JobInFlight: return "JobInFlight";
    case ErrorKind::Frozen: return "Frozen";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// service and CLI layers can map it onto status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hctps

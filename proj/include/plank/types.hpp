#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace plank {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorCode {
  InvalidMatrix,
  InvalidDimension,
  InvalidBody,
  NotPSD,
  NullRow,
  DegenerateDiagonal,
  NoConvergence,
  NotSymmetric,
  FlipBudgetExceeded,
  InsufficientSlack,
  ResolutionTooCoarse,
  CertificateViolation,
  NonNormable,
  NotNormalized,
  InvalidOrthogonal,
  NullNormal,
  TooLarge,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plank

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "momentkit/types.hpp"

namespace momentkit {

/// Base class for every error the library reports. `kind()` is a stable
/// machine-readable tag; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& detail)
      : std::runtime_error(detail), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& detail) : Error("InvalidArgument", detail) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& detail) : Error("ParseError", detail) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& detail) : Error("NonConvergence", detail) {}
};

class InsufficientMoments : public Error {
 public:
  explicit InsufficientMoments(const std::string& detail)
      : Error("InsufficientMoments", detail) {}
};

class DegreeTooHigh : public Error {
 public:
  explicit DegreeTooHigh(const std::string& detail) : Error("DegreeTooHigh", detail) {}
};

class ZeroPolynomial : public Error {
 public:
  explicit ZeroPolynomial(const std::string& detail) : Error("ZeroPolynomial", detail) {}
};

/// Thrown when a Cholesky pivot of the moment Hankel matrix drops below the
/// rank tolerance. Carries the numerical rank detected so far, which equals
/// the number of atoms the underlying measure can support.
class RankDeficient : public Error {
 public:
  RankDeficient(Index rank, const std::string& detail)
      : Error("RankDeficient", detail), rank_(rank) {}

  Index rank() const { return rank_; }

 private:
  Index rank_;
};

class NotAMomentSequence : public Error {
 public:
  explicit NotAMomentSequence(const std::string& detail) : Error("NotAMomentSequence", detail) {}
};

class EvaluationOutsideDomain : public Error {
 public:
  explicit EvaluationOutsideDomain(const std::string& detail)
      : Error("EvaluationOutsideDomain", detail) {}
};

class GridTooCoarse : public Error {
 public:
  explicit GridTooCoarse(const std::string& detail) : Error("GridTooCoarse", detail) {}
};

/// The minorant optimum exceeded the majorant optimum by more than lp_tol.
/// This is a grid/degree artifact, reported with both bounds for diagnosis.
class SandwichEmpty : public Error {
 public:
  SandwichEmpty(double lower, double upper, const std::string& detail)
      : Error("SandwichEmpty", detail), lower_(lower), upper_(upper) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

class LpInfeasible : public Error {
 public:
  explicit LpInfeasible(const std::string& detail) : Error("LpInfeasible", detail) {}
};

class LpUnbounded : public Error {
 public:
  explicit LpUnbounded(const std::string& detail) : Error("LpUnbounded", detail) {}
};

}  // namespace momentkit

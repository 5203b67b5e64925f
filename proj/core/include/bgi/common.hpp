#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace bgi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Exact rationals for Moebius and Weingarten arithmetic.
using Rational = mpq_class;

// Dense vertex index into a Bigraph's vertex list (insertion order).
using Vertex = std::size_t;

// A word / coloring c : [k] -> V, stored 0-based.
using Coloring = std::vector<Vertex>;

enum class ErrorCode {
  DiagonalMissing,
  SelfLoopInE2,
  UnknownVertex,
  SamePair,
  InconsistentKinds,
  ArityMismatch,
  EmptyS1,
  SizeGuard,
  NotNonCrossing,
  NotComparable,
  NotMonochromatic,
  NotCompatible,
  NotComposition,
  NegativeHeight,
  ZeroPlateauViolation,
  VertexMismatch,
  NotBMTRegime,
  NotEpsilonRegime,
  DimMismatch,
  TruncationOverflow,
  InvalidPath,
  SingularGram,
  NotStabilizing,
  ParseError,
};

const char* error_name(ErrorCode code);

// All library failures are reported through this exception; the code allows
// callers (and the CLI) to branch on the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Default numeric tolerance: relative 1e-9 with an absolute floor of 1e-12.
struct Tolerance {
  double relative = 1e-9;
  double absolute = 1e-12;
};

inline bool close(Complex a, Complex b, Tolerance tol = {}) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol.relative * scale + tol.absolute;
}

// Relative discrepancy used in reports: |a-b| / max(|a|,|b|,floor).
inline double discrepancy(Complex a, Complex b, double floor = 1e-12) {
  const double scale = std::max({std::abs(a), std::abs(b), floor});
  return std::abs(a - b) / scale;
}

// Size guards shared by the enumeration-heavy modules.
inline constexpr std::size_t kMaxEnumeration = 12;
inline constexpr std::size_t kMaxCumulantOrder = 10;
inline constexpr std::size_t kMaxWeingartenOrder = 7;
inline constexpr std::size_t kMaxStabilizerWord = 8;
inline constexpr std::size_t kMaxRandomAlgebraDim = 16;
inline constexpr std::size_t kMaxModelDim = 4096;

}  // namespace bgi

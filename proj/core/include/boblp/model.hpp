#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "boblp/point.hpp"

namespace boblp {

inline constexpr double kTolInt = 1e-6;
inline constexpr double kTolFeas = 1e-6;

enum class ErrorCode {
  kMalformedHeader,
  kDimensionMismatch,
  kUnknownSense,
  kNonFiniteValue,
  kInfeasibleFamilyParameters,
  kNonIntegralInput,
  kDegenerateSegment,
  kInstanceTooLarge,
  kNonIntegralObjective,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Error raised by every fallible operation in the library. The code is
/// stable and matches the error names used in the CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Sense : std::uint8_t { kLessEqual, kGreaterEqual, kEqual };

std::string_view to_string(Sense s);

/// A bi-objective binary linear program:
///   min (c1 x, c2 x)  s.t.  A x {<=,>=,=} b,  x in {0,1}^n.
///
/// The constraint matrix is dense and row-major. Instances are immutable
/// once validated and may be shared freely between threads.
struct Instance {
  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> c1;
  std::vector<double> c2;
  std::vector<double> a;  // m * n, row-major
  std::vector<Sense> senses;
  std::vector<double> b;

  std::span<const double> row(std::size_t i) const {
    return {a.data() + i * n, n};
  }
  std::span<const double> objective(int k) const { return k == 0 ? c1 : c2; }

  /// Throws Error on inconsistent dimensions or non-finite coefficients.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// A point of the unit box together with its integrality flag.
struct SolutionVec {
  std::vector<double> values;
  bool integral = false;

  SolutionVec() = default;
  explicit SolutionVec(std::vector<double> v);

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }

  /// Values snapped to exact 0/1. Only meaningful when integral.
  std::vector<std::uint8_t> bits() const;

  friend bool operator==(const SolutionVec& l, const SolutionVec& r) {
    return l.values == r.values;
  }
};

bool is_integral(std::span<const double> x, double tol = kTolInt);

SolutionVec make_binary(std::span<const std::uint8_t> bits);

Instance parse_instance(std::istream& in, std::string name = "instance");
Instance parse_instance(std::string_view text, std::string name = "instance");
Instance load_instance(const std::string& path);

/// Writes the line-oriented text format; round-trips through parse_instance.
void write_instance(std::ostream& out, const Instance& inst);
std::string serialize_instance(const Instance& inst);

Point evaluate(const Instance& inst, std::span<const double> x);
Point evaluate(const Instance& inst, const SolutionVec& x);

/// Row-wise feasibility of an integral solution within kTolFeas.
/// Throws kNonIntegralInput when x is fractional.
bool is_feasible(const Instance& inst, const SolutionVec& x);

/// Feasibility of 0/1 data without the integrality check.
bool is_feasible_bits(const Instance& inst, std::span<const std::uint8_t> bits);

// ---------------------------------------------------------------------------
// Random instance generation

enum class Family : std::uint8_t {
  kKnapsack,
  kMdmKnapsack,
  kSetCovering,
  kSetPartitioning,
  kAssignment,
  kUflp,
};

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

struct GeneratorConfig {
  Family family = Family::kKnapsack;
  std::size_t n = 10;
  std::uint64_t seed = 0;
  double target_rho = -0.92;
  double density_lo = 0.10;
  double density_hi = 0.30;

  void validate() const;
};

/// Deterministic in the config. Identical across platforms whose libm
/// agrees on log/cos (used by the normal sampler).
Instance generate(const GeneratorConfig& cfg);

/// Sample Pearson correlation; 0 when either vector is constant.
double pearson(std::span<const double> u, std::span<const double> v);

}  // namespace boblp

#include "boblp/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace boblp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kUnknownSense: return "unknown-sense";
    case ErrorCode::kNonFiniteValue: return "non-finite-value";
    case ErrorCode::kInfeasibleFamilyParameters: return "infeasible-family-parameters";
    case ErrorCode::kNonIntegralInput: return "non-integral-input";
    case ErrorCode::kDegenerateSegment: return "degenerate-segment";
    case ErrorCode::kInstanceTooLarge: return "instance-too-large";
    case ErrorCode::kNonIntegralObjective: return "non-integral-objective";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

std::string_view to_string(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

ScalarDirection::ScalarDirection(double w1, double w2) : l1(w1), l2(w2) {
  if (!(w1 >= 0.0) || !(w2 >= 0.0) || !(w1 + w2 > 0.0) || !std::isfinite(w1) ||
      !std::isfinite(w2)) {
    throw Error(ErrorCode::kInvalidArgument, "scalar direction must be nonnegative and nonzero");
  }
}

ScalarDirection ScalarDirection::normalized() const {
  const double s = l1 + l2;
  return ScalarDirection(l1 / s, l2 / s);
}

void Instance::validate() const {
  if (n < 1) throw Error(ErrorCode::kDimensionMismatch, "instance needs at least one variable");
  if (c1.size() != n || c2.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "objective length differs from n");
  }
  if (a.size() != m * n || senses.size() != m || b.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "constraint data inconsistent with m x n");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(c1.begin(), c1.end(), finite) || !std::all_of(c2.begin(), c2.end(), finite) ||
      !std::all_of(a.begin(), a.end(), finite) || !std::all_of(b.begin(), b.end(), finite)) {
    throw Error(ErrorCode::kNonFiniteValue, "instance has a non-finite coefficient");
  }
}

bool is_integral(std::span<const double> x, double tol) {
  return std::all_of(x.begin(), x.end(),
                     [tol](double v) { return std::min(std::abs(v), std::abs(1.0 - v)) <= tol; });
}

SolutionVec::SolutionVec(std::vector<double> v) : values(std::move(v)) {
  integral = is_integral(values);
}

std::vector<std::uint8_t> SolutionVec::bits() const {
  std::vector<std::uint8_t> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) out[j] = values[j] > 0.5 ? 1 : 0;
  return out;
}

SolutionVec make_binary(std::span<const std::uint8_t> bits) {
  std::vector<double> v(bits.begin(), bits.end());
  return SolutionVec(std::move(v));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_number(std::string_view tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(ErrorCode::kMalformedHeader,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFiniteValue,
                "line " + std::to_string(line_no) + ": non-finite value '" + std::string(tok) + "'");
  }
  return v;
}

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

}  // namespace

Instance parse_instance(std::istream& in, std::string name) {
  std::vector<std::string> storage;
  std::vector<std::size_t> numbers;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
    if (split_tokens(raw).empty()) continue;
    storage.push_back(raw);
    numbers.push_back(line_no);
  }
  std::vector<Line> lines;
  lines.reserve(storage.size());
  for (std::size_t i = 0; i < storage.size(); ++i) lines.push_back({numbers[i], split_tokens(storage[i])});

  if (lines.empty()) throw Error(ErrorCode::kMalformedHeader, "empty input: expected 'n m' header");
  const Line& header = lines[0];
  if (header.tokens.size() != 2) {
    throw Error(ErrorCode::kMalformedHeader, "header must contain exactly 'n m'");
  }
  auto parse_count = [&](std::string_view tok) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::kMalformedHeader, "header counts must be nonnegative integers");
    }
    return v;
  };
  Instance inst;
  inst.name = std::move(name);
  inst.n = parse_count(header.tokens[0]);
  inst.m = parse_count(header.tokens[1]);
  if (inst.n < 1) throw Error(ErrorCode::kMalformedHeader, "n must be at least 1");
  if (lines.size() != 3 + inst.m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(3 + inst.m) + " non-empty lines, found " +
                    std::to_string(lines.size()));
  }
  auto read_vector = [&](const Line& l) {
    if (l.tokens.size() != inst.n) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(l.number) + ": expected " + std::to_string(inst.n) +
                      " coefficients");
    }
    std::vector<double> v;
    v.reserve(inst.n);
    for (auto t : l.tokens) v.push_back(parse_number(t, l.number));
    return v;
  };
  inst.c1 = read_vector(lines[1]);
  inst.c2 = read_vector(lines[2]);
  inst.a.reserve(inst.m * inst.n);
  for (std::size_t i = 0; i < inst.m; ++i) {
    const Line& l = lines[3 + i];
    if (l.tokens.size() != inst.n + 2) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "line " + std::to_string(l.number) + ": expected " + std::to_string(inst.n) +
                      " coefficients, a sense and a right-hand side");
    }
    for (std::size_t j = 0; j < inst.n; ++j) inst.a.push_back(parse_number(l.tokens[j], l.number));
    std::string_view s = l.tokens[inst.n];
    if (s == "<=") {
      inst.senses.push_back(Sense::kLessEqual);
    } else if (s == ">=") {
      inst.senses.push_back(Sense::kGreaterEqual);
    } else if (s == "=" || s == "==") {
      inst.senses.push_back(Sense::kEqual);
    } else {
      throw Error(ErrorCode::kUnknownSense,
                  "line " + std::to_string(l.number) + ": unknown sense '" + std::string(s) + "'");
    }
    inst.b.push_back(parse_number(l.tokens[inst.n + 1], l.number));
  }
  inst.validate();
  return inst;
}

Instance parse_instance(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, std::move(name));
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "'");
  std::string name = path;
  if (auto pos = name.find_last_of('/'); pos != std::string::npos) name.erase(0, pos + 1);
  if (auto pos = name.rfind('.'); pos != std::string::npos && pos > 0) name.erase(pos);
  return parse_instance(in, name);
}

namespace {

void write_number(std::ostream& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

void write_row(std::ostream& out, std::span<const double> v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) out << ' ';
    write_number(out, v[j]);
  }
}

}  // namespace

void write_instance(std::ostream& out, const Instance& inst) {
  out << "# " << inst.name << '\n';
  out << inst.n << ' ' << inst.m << '\n';
  write_row(out, inst.c1);
  out << '\n';
  write_row(out, inst.c2);
  out << '\n';
  for (std::size_t i = 0; i < inst.m; ++i) {
    write_row(out, inst.row(i));
    out << ' ' << to_string(inst.senses[i]) << ' ';
    write_number(out, inst.b[i]);
    out << '\n';
  }
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

// ---------------------------------------------------------------------------

Point evaluate(const Instance& inst, std::span<const double> x) {
  Point p;
  for (std::size_t j = 0; j < inst.n; ++j) {
    p.y1 += inst.c1[j] * x[j];
    p.y2 += inst.c2[j] * x[j];
  }
  return p;
}

Point evaluate(const Instance& inst, const SolutionVec& x) { return evaluate(inst, x.values); }

namespace {

bool row_holds(Sense s, double lhs, double rhs) {
  switch (s) {
    case Sense::kLessEqual: return lhs <= rhs + kTolFeas;
    case Sense::kGreaterEqual: return lhs >= rhs - kTolFeas;
    case Sense::kEqual: return std::abs(lhs - rhs) <= kTolFeas;
  }
  return false;
}

}  // namespace

bool is_feasible(const Instance& inst, const SolutionVec& x) {
  if (x.size() != inst.n || !is_integral(x.values)) {
    throw Error(ErrorCode::kNonIntegralInput, "feasibility check needs an integral solution");
  }
  for (std::size_t i = 0; i < inst.m; ++i) {
    auto r = inst.row(i);
    double lhs = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) lhs += r[j] * std::round(x[j]);
    if (!row_holds(inst.senses[i], lhs, inst.b[i])) return false;
  }
  return true;
}

bool is_feasible_bits(const Instance& inst, std::span<const std::uint8_t> bits) {
  for (std::size_t i = 0; i < inst.m; ++i) {
    auto r = inst.row(i);
    double lhs = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) {
      if (bits[j]) lhs += r[j];
    }
    if (!row_holds(inst.senses[i], lhs, inst.b[i])) return false;
  }
  return true;
}

double pearson(std::span<const double> u, std::span<const double> v) {
  const std::size_t n = std::min(u.size(), v.size());
  if (n < 2) return 0.0;
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suv += (u[i] - mu) * (v[i] - mv);
    suu += (u[i] - mu) * (u[i] - mu);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  if (suu <= 0.0 || svv <= 0.0) return 0.0;
  return suv / std::sqrt(suu * svv);
}

}  // namespace boblp

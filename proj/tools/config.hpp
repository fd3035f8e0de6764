#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "colombeau/coefficients.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/key_value.hpp"
#include "colombeau/measure.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/test_function.hpp"

namespace colombeau::app {

/// Schema violation anchored at a config line ("file:line: message").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class ValueType {
  integer,
  real,
  choice,       // one of KeySpec::choices
  boolean,      // true / false
  real_list,    // comma separated
  eps_grid,     // dyadic(a,b), half_dyadic(a,b), scaled_dyadic(s,a,b) or a list
  mollifier,    // cauchy_power(m) or poisson
  measures,     // ';' separated measure expressions
  tests,        // ';' separated test functions
  coefficient,  // one coefficient family
  coefficients, // ';' separated, one per axis or a single shared family
  data,         // initial data: dirac, sqrt_dirac, gaussian(w,k), triangle(r)
};

struct KeySpec {
  std::string name;
  ValueType type = ValueType::real;
  std::string fallback;  // default value text; empty means required
  std::string unit;      // "1" for dimensionless, "length", "time", ...
  std::string doc;
  std::vector<std::string> choices;
  double min = -1e300;   // inclusive bounds for numeric values
  double max = 1e300;
};

/// Keys accepted by an experiment, including the shared ones.
const std::vector<KeySpec>& schema(const std::string& experiment);
const std::vector<std::string>& experiment_names();

/// Closed-form initial data family.
struct DataSpec {
  std::string kind;  // dirac, sqrt_dirac, gaussian, triangle
  double width = 1.0;
  double wavenumber = 0.0;
};

/// A config file validated against its experiment schema. Every value is
/// parsed eagerly, so a Config that constructs is fully typed.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config read(const std::filesystem::path& path);

  const std::string& experiment() const { return experiment_; }
  const KeyValueDoc& doc() const { return doc_; }
  std::string text() const { return raw_; }

  long integer(const std::string& key) const;
  double real(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string choice(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  EpsGrid eps(const std::string& key) const;
  Mollifier mollifier(const std::string& key) const;
  std::vector<Measure> measures(const std::string& key) const;
  std::vector<TestFunctionSpec> tests(const std::string& key) const;
  CoefficientFamily coefficient(const std::string& key) const;
  std::vector<CoefficientFamily> coefficients(const std::string& key) const;
  DataSpec data(const std::string& key) const;
  int dim() const { return static_cast<int>(integer("dim")); }

  /// Raw value text (the default when the key is absent).
  std::string value(const std::string& key) const;
  /// Config line of a key; 0 when it took its default.
  int line(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const KeySpec& spec(const std::string& key) const;
  void validate();

  KeyValueDoc doc_;
  std::string raw_;
  std::string experiment_;
  std::string source_;
};

/// Parses "name(a, b, ...)" into its name and numeric arguments.
std::pair<std::string, std::vector<double>> parse_call(const std::string& text);

EpsGrid parse_eps_grid(const std::string& text);
Mollifier parse_mollifier(const std::string& text, int dim);
DataSpec parse_data(const std::string& text);

}  // namespace colombeau::app

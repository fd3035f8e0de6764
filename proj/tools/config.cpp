#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "colombeau/errors.hpp"

namespace colombeau::app {

namespace {

using VT = ValueType;

KeySpec key(std::string name, VT type, std::string fallback, std::string unit, std::string doc,
            double min = -1e300, double max = 1e300) {
  KeySpec k;
  k.name = std::move(name);
  k.type = type;
  k.fallback = std::move(fallback);
  k.unit = std::move(unit);
  k.doc = std::move(doc);
  k.min = min;
  k.max = max;
  return k;
}

KeySpec choice(std::string name, std::vector<std::string> choices, std::string fallback, std::string doc) {
  KeySpec k = key(std::move(name), VT::choice, std::move(fallback), "1", std::move(doc));
  k.choices = std::move(choices);
  return k;
}

std::vector<KeySpec> common() {
  return {
      choice("experiment", experiment_names(), "", "experiment to run"),
      key("seed", VT::integer, "1", "1", "seed of every random probe", 0, 9.2e18),
      key("dim", VT::integer, "1", "1", "space dimension n", 1, 2),
  };
}

std::vector<KeySpec> with_common(std::vector<KeySpec> extra) {
  auto all = common();
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

std::map<std::string, std::vector<KeySpec>> build_schemas() {
  std::map<std::string, std::vector<KeySpec>> s;
  s["sqrt_measure"] = with_common({
      key("measures", VT::measures, "", "1", "probability measures, ';' separated"),
      key("mollifier", VT::mollifier, "poisson", "1", "mollifier family"),
      key("eps", VT::eps_grid, "dyadic(2,9)", "1", "regularization scales"),
      key("half_width", VT::real, "4", "length", "box half width L", 1e-12),
      key("points", VT::integer, "0", "1", "points per axis; 0 picks dx <= eps_min / 8", 0, 1 << 26),
      key("k_radius", VT::real, "0.5", "length", "radius of the compact set K", 1e-12),
      key("tests", VT::tests, "", "1", "test functions, ';' separated"),
      key("final_tol", VT::real, "1e-2", "1", "largest admissible final association gap", 0),
      key("slack", VT::real, "0.1", "1", "allowed relative growth between successive gaps", 0),
      key("slope_tol", VT::real, "0.15", "1", "tolerance of the lower-bound exponent", 0),
      key("cutoff", VT::boolean, "true", "1", "check the cutoff plateau identity"),
      key("vanishing", VT::boolean, "false", "1", "check |<phi_eps, psi>| ~ eps^{n/2}"),
  });
  s["schrodinger_sweep"] = with_common({
      key("c", VT::coefficients, "log_oscillating(2,1)", "1", "diffusion coefficients c_k"),
      key("V", VT::coefficient, "constant(0)", "1", "potential"),
      key("c0", VT::real, "1", "1", "uniform lower bound of c_k", 1e-12),
      key("data", VT::data, "dirac", "1", "initial data family"),
      key("mollifier", VT::mollifier, "poisson", "1", "mollifier for singular data"),
      key("eps", VT::eps_grid, "dyadic(2,7)", "1", "regularization scales"),
      key("T", VT::real, "0.25", "time", "final time", 1e-12),
      key("time_steps", VT::integer, "0", "1", "time steps; 0 picks dt <= dx", 0, 1e9),
      key("half_width", VT::real, "4", "length", "box half width L", 1e-12),
      key("points", VT::integer, "0", "1", "fixed points per axis; 0 uses spacing_per_eps", 0, 1 << 26),
      key("spacing_per_eps", VT::real, "0.125", "1", "dx <= eps * spacing_per_eps", 1e-12),
      key("min_points", VT::integer, "64", "1", "lower bound on points per axis", 8, 1 << 26),
      key("history_stride", VT::integer, "1", "1", "norm history every k steps", 1, 1e9),
      key("probes", VT::integer, "20", "1", "random coercivity probes per eps", 0, 10000),
      key("kappa", VT::real, "1", "1", "constant of the energy bound", 1e-300),
      key("drift_tol", VT::real, "1e-10", "1", "largest per-step L2 drift", 0),
      key("max_residual", VT::real, "0.1", "1", "largest moderateness fit residual (log units)", 0),
      key("uniqueness_q", VT::integer, "6", "1", "perturbation order q; 0 skips the probe", 0, 40),
      key("uniqueness_tol", VT::real, "0.5", "1", "slack of the uniqueness slope", 0),
  });
  s["free_example"] = with_common({
      key("mollifier", VT::mollifier, "cauchy_power(4)", "1", "mollifier with integrable square root"),
      key("eps", VT::eps_grid, "dyadic(2,8)", "1", "regularization scales"),
      key("times", VT::real_list, "0.5, 1", "time", "evolution times"),
      key("tests", VT::tests, "", "1", "test functions, ';' separated"),
      key("spread", VT::real, "12", "1", "box half width per t_max / eps", 0),
      key("tail_tol", VT::real, "1e-10", "1", "mollifier tail mass left outside the box", 0),
      key("min_width", VT::real, "0", "1", "box half width per eps, lower bound", 0),
      key("mass_tol", VT::real, "1e-8", "1", "tolerance of the unit-mass law", 0),
      key("rate_slack", VT::real, "0.1", "1", "pairing rates must reach n/2 - slack", 0),
      key("wrap_tol", VT::real, "1e-4", "1", "largest spectral fraction allowed to wrap", 0),
  });
  s["coherence"] = with_common({
      key("data", VT::data, "gaussian(1,1)", "1", "smooth H^1 data g0: gaussian(w,k) or triangle(r)"),
      choice("forcing", {"none", "pulse"}, "none", "f0 = 0, or exp(-|x|^2) cos t"),
      key("c", VT::coefficients, "smooth(0.3,0.5)", "1", "smooth eps-independent coefficients"),
      key("V", VT::coefficient, "gaussian_well(1,1)", "1", "smooth potential"),
      key("c0", VT::real, "1", "1", "uniform lower bound of c_k", 1e-12),
      key("mollifier", VT::mollifier, "cauchy_power(6)", "1", "mollifier embedding the data"),
      key("eps", VT::eps_grid, "dyadic(1,6)", "1", "regularization scales"),
      key("T", VT::real, "0.5", "time", "final time", 1e-12),
      key("half_width", VT::real, "8", "length", "box half width L", 1e-12),
      key("points", VT::integer, "8192", "1", "points per axis", 8, 1 << 26),
      key("time_steps", VT::integer, "4096", "1", "time steps; 0 picks dt <= dx", 0, 1e9),
      key("snapshots", VT::integer, "11", "1", "comparison times including 0 and T", 2, 1e6),
      key("tol", VT::real, "1e-3", "1", "final sup-t H^1 difference", 0),
      key("min_rate", VT::real, "0.9", "1", "smallest admissible eps-rate", 0),
      key("check_reference", VT::boolean, "true", "1", "self-convergence check of the reference"),
  });
  s["association"] = with_common({
      key("data", VT::data, "dirac", "1", "initial data family"),
      key("mollifier", VT::mollifier, "cauchy_power(4)", "1", "mollifier for the data"),
      key("c", VT::coefficients, "constant(1)", "1", "diffusion coefficients c_k"),
      key("V", VT::coefficient, "constant(0)", "1", "potential"),
      key("c0", VT::real, "1", "1", "uniform lower bound of c_k", 1e-12),
      key("eps", VT::eps_grid, "dyadic(2,7)", "1", "regularization scales"),
      key("T", VT::real, "0.25", "time", "final time", 1e-12),
      key("times", VT::real_list, "0.25", "time", "pairing times in [0, T]"),
      key("time_steps", VT::integer, "0", "1", "time steps; 0 picks dt <= dx", 0, 1e9),
      key("half_width", VT::real, "8", "length", "box half width L", 1e-12),
      key("points", VT::integer, "0", "1", "fixed points per axis; 0 uses spacing_per_eps", 0, 1 << 26),
      key("spacing_per_eps", VT::real, "0.125", "1", "dx <= eps * spacing_per_eps", 1e-12),
      key("min_points", VT::integer, "64", "1", "lower bound on points per axis", 8, 1 << 26),
      key("tests", VT::tests, "", "1", "test functions, ';' separated"),
      choice("quantity", {"solution", "density"}, "solution", "pair u_eps or |u_eps|^2"),
      choice("oracle", {"none", "free"}, "none", "free-propagator limit (c = 1, V = 0 only)"),
      key("min_contraction", VT::real, "1.5", "1", "Cauchy contraction threshold", 0),
      key("oracle_tol", VT::real, "1e-2", "1", "largest gap between limit and oracle", 0),
      key("rate_slack", VT::real, "0.1", "1", "square-root data: rates must reach n/2 - slack", 0),
      key("mass_tol", VT::real, "1e-6", "1", "square-root data: tolerance of the unit mass", 0),
  });
  s["selftest"] = common();
  return s;
}

const std::map<std::string, std::vector<KeySpec>>& schemas() {
  static const auto s = build_schemas();
  return s;
}

bool parse_long(const std::string& s, long& out) {
  std::size_t used = 0;
  try {
    out = std::stol(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

bool parse_double(const std::string& s, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size() && std::isfinite(out);
}

std::vector<std::string> items(const std::string& text, char sep) {
  std::vector<std::string> out;
  for (auto& s : split(text, sep)) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"sqrt_measure", "schrodinger_sweep", "free_example",
                                              "coherence",    "association",       "selftest"};
  return names;
}

const std::vector<KeySpec>& schema(const std::string& experiment) {
  const auto it = schemas().find(experiment);
  if (it == schemas().end()) throw std::invalid_argument("unknown experiment '" + experiment + "'");
  return it->second;
}

std::pair<std::string, std::vector<double>> parse_call(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open == std::string::npos) {
    if (t.empty()) throw PreconditionError("empty expression");
    return {t, {}};
  }
  if (t.back() != ')') throw PreconditionError("expected ')' at the end of '" + t + "'");
  std::vector<double> args;
  const std::string inner = trim(t.substr(open + 1, t.size() - open - 2));
  if (!inner.empty()) {
    for (const auto& a : split(inner, ',')) {
      double v = 0;
      if (!parse_double(a, v)) throw PreconditionError("non-numeric argument '" + a + "' in '" + t + "'");
      args.push_back(v);
    }
  }
  return {trim(t.substr(0, open)), args};
}

EpsGrid parse_eps_grid(const std::string& text) {
  if (text.find('(') == std::string::npos) {
    std::vector<double> v;
    for (const auto& item : items(text, ',')) {
      double x = 0;
      if (!parse_double(item, x)) throw PreconditionError("non-numeric eps value '" + item + "'");
      v.push_back(x);
    }
    return EpsGrid(std::move(v));
  }
  const auto [name, a] = parse_call(text);
  auto whole = [&](double x) {
    if (x != std::floor(x)) throw PreconditionError("eps grid exponents must be integers");
    return static_cast<int>(x);
  };
  if (name == "dyadic" && a.size() == 2) return EpsGrid::dyadic(whole(a[0]), whole(a[1]));
  if (name == "half_dyadic" && a.size() == 2) return EpsGrid::half_dyadic(whole(a[0]), whole(a[1]));
  if (name == "scaled_dyadic" && a.size() == 3) {
    return EpsGrid::scaled_dyadic(a[0], whole(a[1]), whole(a[2]));
  }
  throw PreconditionError("expected dyadic(a,b), half_dyadic(a,b), scaled_dyadic(s,a,b) or a list");
}

Mollifier parse_mollifier(const std::string& text, int dim) {
  const auto [name, a] = parse_call(text);
  if (name == "poisson" && a.empty()) return Mollifier::poisson(dim);
  if (name == "cauchy_power" && a.size() == 1) return Mollifier::cauchy_power(dim, a[0]);
  throw PreconditionError("expected poisson or cauchy_power(m)");
}

DataSpec parse_data(const std::string& text) {
  const auto [name, a] = parse_call(text);
  DataSpec d;
  d.kind = name;
  if ((name == "dirac" || name == "sqrt_dirac") && a.empty()) return d;
  if (name == "gaussian" && a.size() == 2 && a[0] > 0) {
    d.width = a[0];
    d.wavenumber = a[1];
    return d;
  }
  if (name == "triangle" && a.size() == 1 && a[0] > 0) {
    d.width = a[0];
    return d;
  }
  throw PreconditionError("expected dirac, sqrt_dirac, gaussian(width>0, wavenumber) or triangle(radius>0)");
}

Config Config::parse(const std::string& text, const std::string& source) {
  Config c;
  c.source_ = source;
  c.raw_ = text;
  try {
    c.doc_ = KeyValueDoc::parse(text, source);
  } catch (const KeyValueError& e) {
    throw ConfigError(source, e.line(), std::string(e.what()).substr(source.size() + 3 + std::to_string(e.line()).size()));
  }
  const auto* exp = c.doc_.find("experiment");
  if (exp == nullptr) throw ConfigError(source, 1, "missing required key 'experiment'");
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), exp->value) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError(source, exp->line, "unknown experiment '" + exp->value + "' (expected one of " + list + ")");
  }
  c.experiment_ = exp->value;
  c.validate();
  return c;
}

Config Config::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const KeySpec& Config::spec(const std::string& k) const {
  for (const auto& s : schema(experiment_)) {
    if (s.name == k) return s;
  }
  throw std::logic_error("key '" + k + "' is not part of the " + experiment_ + " schema");
}

std::string Config::value(const std::string& k) const {
  const auto* e = doc_.find(k);
  return e != nullptr ? e->value : spec(k).fallback;
}

int Config::line(const std::string& k) const {
  const auto* e = doc_.find(k);
  return e != nullptr ? e->line : 0;
}

void Config::fail(const std::string& k, const std::string& what) const {
  throw ConfigError(source_, line(k), "key '" + k + "': " + what);
}

void Config::validate() {
  const auto& keys = schema(experiment_);
  for (const auto& e : doc_.entries()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const KeySpec& s) { return s.name == e.key; });
    if (!known) throw ConfigError(source_, e.line, "unknown key '" + e.key + "' for experiment " + experiment_);
  }
  for (const auto& s : keys) {
    if (s.fallback.empty() && doc_.find(s.name) == nullptr) {
      throw ConfigError(source_, 1, "missing required key '" + s.name + "' (" + s.doc + ")");
    }
  }
  // Parse every value once; dim first since several types depend on it.
  for (const auto& s : keys) {
    if (s.name == "dim") integer("dim");
  }
  for (const auto& s : keys) {
    switch (s.type) {
      case VT::integer: integer(s.name); break;
      case VT::real: real(s.name); break;
      case VT::boolean: flag(s.name); break;
      case VT::choice: choice(s.name); break;
      case VT::real_list: reals(s.name); break;
      case VT::eps_grid: eps(s.name); break;
      case VT::mollifier: mollifier(s.name); break;
      case VT::measures: measures(s.name); break;
      case VT::tests: tests(s.name); break;
      case VT::coefficient: coefficient(s.name); break;
      case VT::coefficients: coefficients(s.name); break;
      case VT::data: data(s.name); break;
    }
  }
  if (experiment_ == "schrodinger_sweep" || experiment_ == "coherence" || experiment_ == "association") {
    const auto c = coefficients("c");
    if (c.size() != 1 && static_cast<int>(c.size()) != dim()) {
      fail("c", "give one family or one per axis (" + std::to_string(dim()) + ")");
    }
  }
  if (experiment_ == "coherence" && (data("data").kind == "dirac" || data("data").kind == "sqrt_dirac")) {
    fail("data", "coherence needs H^1 data: gaussian(w,k) or triangle(r)");
  }
  if (experiment_ == "association" || experiment_ == "free_example") {
    const double T = experiment_ == "association" ? real("T") : 1e300;
    for (double t : reals("times")) {
      if (t < 0 || t > T) fail("times", "time " + format_double(t) + " lies outside [0, T]");
    }
  }
  if (experiment_ == "association" && choice("oracle") == "free") {
    for (const auto& c : coefficients("c")) {
      if (c.descriptor() != CoefficientFamily::constant(1.0).descriptor()) {
        fail("oracle", "the free oracle needs c = constant(1), got " + c.descriptor());
      }
    }
    if (coefficient("V").descriptor() != CoefficientFamily::constant(0.0).descriptor()) {
      fail("oracle", "the free oracle needs V = constant(0)");
    }
    if (choice("quantity") != "solution" || data("data").kind == "sqrt_dirac") {
      fail("oracle", "the free oracle covers quantity = solution with dirac or smooth data");
    }
  }
  if (experiment_ == "sqrt_measure" && flag("vanishing") && !mollifier("mollifier").sqrt_integrable()) {
    fail("vanishing", "needs a mollifier with integrable square root (m > 2n)");
  }
  if (experiment_ == "free_example" && !mollifier("mollifier").sqrt_integrable()) {
    fail("mollifier", "the square root of the mollifier must be integrable (m > 2n)");
  }
}

long Config::integer(const std::string& k) const {
  const auto& s = spec(k);
  long v = 0;
  if (!parse_long(value(k), v)) fail(k, "expected an integer, got '" + value(k) + "'");
  if (v < s.min || v > s.max) fail(k, "value " + std::to_string(v) + " is out of range");
  return v;
}

double Config::real(const std::string& k) const {
  const auto& s = spec(k);
  double v = 0;
  if (!parse_double(value(k), v)) fail(k, "expected a number, got '" + value(k) + "'");
  if (v < s.min || v > s.max) fail(k, "value " + value(k) + " is out of range");
  return v;
}

bool Config::flag(const std::string& k) const {
  const auto v = value(k);
  if (v == "true") return true;
  if (v == "false") return false;
  fail(k, "expected true or false, got '" + v + "'");
}

std::string Config::choice(const std::string& k) const {
  const auto& s = spec(k);
  const auto v = value(k);
  if (std::find(s.choices.begin(), s.choices.end(), v) == s.choices.end()) {
    std::string list;
    for (const auto& c : s.choices) list += (list.empty() ? "" : ", ") + c;
    fail(k, "expected one of " + list + ", got '" + v + "'");
  }
  return v;
}

std::vector<double> Config::reals(const std::string& k) const {
  std::vector<double> out;
  for (const auto& item : items(value(k), ',')) {
    double v = 0;
    if (!parse_double(item, v)) fail(k, "non-numeric list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) fail(k, "expected at least one value");
  return out;
}

EpsGrid Config::eps(const std::string& k) const {
  try {
    return parse_eps_grid(value(k));
  } catch (const Error& e) {
    fail(k, e.what());
  }
}

Mollifier Config::mollifier(const std::string& k) const {
  try {
    return parse_mollifier(value(k), dim());
  } catch (const Error& e) {
    fail(k, e.what());
  }
}

std::vector<Measure> Config::measures(const std::string& k) const {
  std::vector<Measure> out;
  try {
    for (const auto& item : items(value(k), ';')) out.push_back(Measure::parse(item, dim()));
  } catch (const Error& e) {
    fail(k, e.what());
  }
  if (out.empty()) fail(k, "expected at least one measure");
  return out;
}

std::vector<TestFunctionSpec> Config::tests(const std::string& k) const {
  std::vector<TestFunctionSpec> out;
  try {
    for (const auto& item : items(value(k), ';')) out.push_back(parse_test_function(item, dim()));
  } catch (const Error& e) {
    fail(k, e.what());
  }
  if (out.empty()) fail(k, "expected at least one test function");
  return out;
}

CoefficientFamily Config::coefficient(const std::string& k) const {
  try {
    return CoefficientFamily::parse(value(k));
  } catch (const Error& e) {
    fail(k, e.what());
  }
}

std::vector<CoefficientFamily> Config::coefficients(const std::string& k) const {
  std::vector<CoefficientFamily> out;
  try {
    for (const auto& item : items(value(k), ';')) out.push_back(CoefficientFamily::parse(item));
  } catch (const Error& e) {
    fail(k, e.what());
  }
  if (out.empty()) fail(k, "expected at least one coefficient family");
  return out;
}

DataSpec Config::data(const std::string& k) const {
  try {
    return parse_data(value(k));
  } catch (const Error& e) {
    fail(k, e.what());
  }
}

}  // namespace colombeau::app

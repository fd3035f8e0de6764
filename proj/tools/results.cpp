#include "results.hpp"

#include <Eigen/Core>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "colombeau/key_value.hpp"

#ifndef COLOMBEAU_VERSION
#define COLOMBEAU_VERSION "unknown"
#endif

namespace colombeau::app {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string compiler() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

}  // namespace

std::string cell(double v) { return format_double(v); }

std::string cell(long v) { return std::to_string(v); }

void Table::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " cells for " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + quote(cells[i]);
    out += '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out;
}

Table& ExperimentResult::table(const std::string& name, std::vector<std::string> columns) {
  tables.push_back(Table{name, std::move(columns), {}});
  return tables.back();
}

void ExperimentResult::check(std::string name, bool passed, std::string measured,
                             std::string threshold, std::string detail) {
  checks.push_back({std::move(name), passed, std::move(measured), std::move(threshold), std::move(detail)});
}

bool ExperimentResult::passed() const { return failures().empty(); }

std::vector<const Check*> ExperimentResult::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

void write_results(const std::filesystem::path& dir, const RunInfo& info,
                   const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  write_text(dir / "config.cfg", info.config_text);

  std::string files = "config.cfg";
  for (const auto& t : result.tables) {
    write_text(dir / (t.name + ".csv"), t.csv());
    files += ", " + t.name + ".csv";
  }

  Table checks{"checks", {"check", "status", "measured", "threshold", "detail"}, {}};
  for (const auto& c : result.checks) {
    checks.add({c.name, c.passed ? "pass" : "fail", c.measured, c.threshold, c.detail});
  }
  write_text(dir / "checks.csv", checks.csv());
  files += ", checks.csv";

  KeyValueDoc m;
  m.set("tool", "colombeau");
  m.set("version", COLOMBEAU_VERSION);
  m.set("eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                             "." + std::to_string(EIGEN_MINOR_VERSION));
  m.set("compiler", compiler());
  m.set("cxx_standard", std::to_string(__cplusplus));
  m.set("experiment", info.experiment);
  m.set("config_source", info.config_source);
  m.set("seed", std::to_string(info.seed));
  m.set("workers", std::to_string(info.workers));
  m.set("status", result.passed() ? "pass" : "fail");
  m.set("checks_total", std::to_string(result.checks.size()));
  m.set("checks_failed", std::to_string(result.failures().size()));
  m.set("wall_seconds", format_double(info.wall_seconds));
  for (const auto& [stage, seconds] : result.timings) m.set("timing." + stage, format_double(seconds));
  for (std::size_t i = 0; i < result.warnings.size(); ++i) {
    m.set("warning." + std::to_string(i + 1), result.warnings[i]);
  }
  for (std::size_t i = 0; i < result.notes.size(); ++i) {
    m.set("note." + std::to_string(i + 1), result.notes[i]);
  }
  m.set("files", files + ", manifest.txt");
  m.write(dir / "manifest.txt");
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string report(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.txt";
  if (!std::filesystem::is_regular_file(manifest_path)) {
    throw MissingManifest(dir.string() + ": no manifest.txt (not a results directory)");
  }
  const KeyValueDoc m = KeyValueDoc::read(manifest_path);
  auto get = [&](const std::string& k) { return m.get(k).value_or("?"); };

  std::ostringstream os;
  os << "experiment " << get("experiment") << "  seed " << get("seed") << "  workers "
     << get("workers") << "  wall " << get("wall_seconds") << " s\n";
  os << "version " << get("version") << ", Eigen " << get("eigen_version") << ", " << get("compiler")
     << "\n\n";

  std::vector<std::vector<std::string>> rows;
  if (std::filesystem::is_regular_file(dir / "checks.csv")) rows = read_csv(dir / "checks.csv");
  if (!rows.empty()) rows.erase(rows.begin());
  std::vector<std::string> head{"check", "status", "measured", "threshold"};
  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < head.size() && i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < head.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i]) + 2) << (i < r.size() ? r[i] : "");
    }
    if (r.size() > 4 && !r[4].empty()) os << r[4];
    os << '\n';
  };
  line(head);
  std::size_t failed = 0;
  for (const auto& r : rows) {
    line(r);
    if (r.size() > 1 && r[1] != "pass") ++failed;
  }
  os << '\n' << rows.size() - failed << " of " << rows.size() << " checks passed; status " << get("status")
     << '\n';
  for (const auto& e : m.entries()) {
    if (e.key.rfind("warning.", 0) == 0) os << "warning: " << e.value << '\n';
    if (e.key.rfind("note.", 0) == 0) os << "note: " << e.value << '\n';
  }
  return os.str();
}

}  // namespace colombeau::app

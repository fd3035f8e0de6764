#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace colombeau {

/// Ordered "key = value" text document. '#' starts a comment; blank lines
/// are ignored. Each entry remembers its source line for error messages.
class KeyValueDoc {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  static KeyValueDoc parse(const std::string& text, const std::string& source = "<text>");
  static KeyValueDoc read(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  const Entry* find(const std::string& key) const;
  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<Entry> entries_;
  std::string source_;
};

/// Malformed key-value text; carries the offending line.
class KeyValueError : public std::runtime_error {
 public:
  KeyValueError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace colombeau

#include "colombeau/key_value.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace colombeau {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

KeyValueDoc KeyValueDoc::parse(const std::string& text, const std::string& source) {
  KeyValueDoc doc;
  doc.source_ = source;
  std::stringstream ss(text);
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw KeyValueError(source, line, "expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw KeyValueError(source, line, "empty key");
    if (doc.find(key) != nullptr) throw KeyValueError(source, line, "duplicate key '" + key + "'");
    doc.entries_.push_back({std::move(key), trim(body.substr(eq + 1)), line});
  }
  return doc;
}

KeyValueDoc KeyValueDoc::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeyValueError(path.string(), 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void KeyValueDoc::set(const std::string& key, const std::string& value) {
  for (auto& e : entries_) {
    if (e.key == key) {
      e.value = value;
      return;
    }
  }
  entries_.push_back({key, value, 0});
}

const KeyValueDoc::Entry* KeyValueDoc::find(const std::string& key) const {
  for (const auto& e : entries_) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::optional<std::string> KeyValueDoc::get(const std::string& key) const {
  const auto* e = find(key);
  if (e == nullptr) return std::nullopt;
  return e->value;
}

std::string KeyValueDoc::str() const {
  std::ostringstream os;
  for (const auto& e : entries_) os << e.key << " = " << e.value << '\n';
  return os.str();
}

void KeyValueDoc::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << str();
}

}  // namespace colombeau

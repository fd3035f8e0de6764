#include "colombeau/net_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include "colombeau/key_value.hpp"

namespace colombeau {

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace {

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(std::stod(item));
  return out;
}

std::string require(const KeyValueDoc& doc, const std::string& key) {
  auto v = doc.get(key);
  if (!v) throw Error(doc.source() + ": missing key '" + key + "'");
  return *v;
}

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "item_%03zu.bin", i);
  return buf;
}

}  // namespace

void save_net(const FieldNet& net, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Grid& grid = net[0].grid();
  KeyValueDoc doc;
  doc.set("kind", "field");
  doc.set("label", net.label());
  doc.set("eps", join_doubles(net.eps().values()));
  doc.set("dim", std::to_string(grid.dim()));
  doc.set("half_width", format_double(grid.half_width()));
  doc.set("points_per_axis", std::to_string(grid.points_per_axis()));
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto name = snapshot_name(i);
    std::ofstream out(dir / name, std::ios::binary);
    const auto& v = net[i].values();
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(Complex)));
    if (!out) throw Error("cannot write snapshot " + (dir / name).string());
    doc.set("item." + std::to_string(i), name);
  }
  doc.write(dir / "manifest.txt");
}

FieldNet load_net(const std::filesystem::path& dir) {
  const auto doc = KeyValueDoc::read(dir / "manifest.txt");
  if (require(doc, "kind") != "field") throw Error(doc.source() + ": not a field net");
  const EpsGrid eps(parse_doubles(require(doc, "eps")));
  const Grid grid(std::stoi(require(doc, "dim")), std::stod(require(doc, "half_width")),
                  std::stol(require(doc, "points_per_axis")));
  std::vector<Field> items;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const auto path = dir / require(doc, "item." + std::to_string(i));
    std::ifstream in(path, std::ios::binary);
    Field::Values v(grid.size());
    in.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(Complex)));
    if (!in || in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(Complex))) {
      throw Error("snapshot " + path.string() + " is truncated or missing");
    }
    items.emplace_back(grid, std::move(v));
  }
  return FieldNet(eps, std::move(items), require(doc, "label"));
}

void save_scalar_net(const ScalarNet& net, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  KeyValueDoc doc;
  doc.set("kind", "scalar");
  doc.set("label", net.label());
  doc.set("eps", join_doubles(net.eps().values()));
  doc.set("values", join_doubles(net.items()));
  doc.write(dir / "manifest.txt");
}

ScalarNet load_scalar_net(const std::filesystem::path& dir) {
  const auto doc = KeyValueDoc::read(dir / "manifest.txt");
  if (require(doc, "kind") != "scalar") throw Error(doc.source() + ": not a scalar net");
  return ScalarNet(EpsGrid(parse_doubles(require(doc, "eps"))),
                   parse_doubles(require(doc, "values")), require(doc, "label"));
}

}  // namespace colombeau

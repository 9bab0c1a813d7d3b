#include "evonet/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "evonet/rng.hpp"

namespace evonet {

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

Point point_from_json(const json& j, const std::string& origin) {
  if (!j.contains("id") || !j.contains("x") || !j.contains("y")) {
    throw ParseError(origin + ": point needs id, x, y");
  }
  return Point{j["id"].get<NodeId>(), j["x"].get<double>(),
               j["y"].get<double>()};
}

void append_points(std::ostringstream& out, const std::vector<Point>& points) {
  out << "[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out << ", ";
    out << "{\"id\": " << points[i].id << ", \"x\": "
        << format_double(points[i].x) << ", \"y\": "
        << format_double(points[i].y) << "}";
  }
  out << "]";
}

}  // namespace

std::string serialize_network(const NetworkDocument& doc) {
  std::vector<Point> nodes = doc.nodes;
  std::sort(nodes.begin(), nodes.end(),
            [](const Point& a, const Point& b) { return a.id < b.id; });
  std::ostringstream out;
  out << "{\n  \"nodes\": ";
  append_points(out, nodes);
  out << ",\n  \"links\": [";
  for (std::size_t i = 0; i < doc.net.links.size(); ++i) {
    if (i) out << ", ";
    out << "[" << doc.net.links[i].a << ", " << doc.net.links[i].b << "]";
  }
  out << "],\n  \"meta\": {\"environment_index\": " << doc.environment_index
      << ", \"seed\": " << doc.seed << "}\n}\n";
  return out.str();
}

NetworkDocument parse_network(const std::string& text,
                              const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.contains("nodes") || !j.contains("links")) {
    throw ParseError(origin + ": document needs nodes and links");
  }
  NetworkDocument doc;
  for (const json& p : j["nodes"]) {
    doc.nodes.push_back(point_from_json(p, origin));
  }
  std::sort(doc.nodes.begin(), doc.nodes.end(),
            [](const Point& a, const Point& b) { return a.id < b.id; });
  std::vector<NodeId> ids;
  for (const Point& p : doc.nodes) ids.push_back(p.id);
  doc.net = Network::over(ids);
  for (const json& l : j["links"]) {
    if (!l.is_array() || l.size() != 2) {
      throw ParseError(origin + ": link entries are [id, id] pairs");
    }
    NodeId a = l[0].get<NodeId>();
    NodeId b = l[1].get<NodeId>();
    auto find = [&](NodeId id) -> const Point& {
      auto it = std::lower_bound(
          doc.nodes.begin(), doc.nodes.end(), id,
          [](const Point& p, NodeId v) { return p.id < v; });
      if (it == doc.nodes.end() || it->id != id) {
        throw ParseError(origin + ": link endpoint " + std::to_string(id) +
                         " is not a node");
      }
      return *it;
    };
    doc.net.add_link(Link::between(find(a), find(b)));
  }
  if (j.contains("meta")) {
    const json& meta = j["meta"];
    doc.environment_index = meta.value("environment_index", 0);
    doc.seed = meta.value("seed", std::uint64_t{0});
  }
  return doc;
}

std::string serialize_pool(const LocationPool& pool) {
  std::ostringstream out;
  out << "{\n  \"region\": {\"width\": " << format_double(pool.region.width)
      << ", \"height\": " << format_double(pool.region.height)
      << "},\n  \"points\": ";
  append_points(out, pool.points);
  out << "\n}\n";
  return out.str();
}

LocationPool parse_pool(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.contains("region") || !j.contains("points")) {
    throw ParseError(origin + ": pool needs region and points");
  }
  LocationPool pool;
  pool.region.width = j["region"].value("width", 0.0);
  pool.region.height = j["region"].value("height", 0.0);
  if (pool.region.width <= 0.0 || pool.region.height <= 0.0) {
    throw ParseError(origin + ": region dimensions must be positive");
  }
  for (const json& p : j["points"]) {
    pool.points.push_back(point_from_json(p, origin));
  }
  std::vector<NodeId> ids;
  for (const Point& p : pool.points) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ParseError(origin + ": duplicate point ids");
  }
  return pool;
}

LocationPool generate_pool(const Region& region, int count,
                           std::uint64_t seed) {
  if (region.width <= 0.0 || region.height <= 0.0) {
    throw std::invalid_argument("region dimensions must be positive");
  }
  if (count < 1) throw std::invalid_argument("pool needs >= 1 point");
  Rng rng(seed);
  LocationPool pool;
  pool.region = region;
  pool.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    double x = rng.next_double() * region.width;
    double y = rng.next_double() * region.height;
    pool.points.push_back(Point{i, x, y});
  }
  return pool;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvWriter::add_row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_.size()) {
    throw std::invalid_argument("csv row width mismatch");
  }
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ',';
    row += fields[i];
  }
  rows_.push_back(std::move(row));
}

std::string CsvWriter::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  out += '\n';
  for (const std::string& row : rows_) {
    out += row;
    out += '\n';
  }
  return out;
}

}  // namespace evonet

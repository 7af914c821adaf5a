#include "sortnet/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sortnet/errors.hpp"

namespace sortnet {

using nlohmann::json;

namespace {

// Blanks out whole-line '#' comments while preserving line numbers.
std::string strip_comment_lines(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    size_t first = text.find_first_not_of(" \t\r", pos);
    bool comment = first != std::string::npos && first < eol && text[first] == '#';
    if (!comment) out.append(text, pos, eol - pos);
    if (eol < text.size()) out.push_back('\n');
    pos = eol + 1;
  }
  return out;
}

int line_of_offset(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json(const std::string& raw) {
  const std::string text = strip_comment_lines(raw);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of_offset(text, e.byte)) + ": " +
                     std::string(e.what()));
  }
}

void reject_unknown_fields(const json& obj, const std::vector<std::string>& known,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok |= (it.key() == k);
    if (!ok) throw ParseError(where + ": unknown field '" + it.key() + "'");
  }
}

const json& require_field(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

int require_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

struct LabelTable {
  std::map<std::string, int> index;
  int resolve(const std::string& label, const std::string& where) const {
    auto it = index.find(label);
    if (it == index.end()) throw ValidationError(where + ": unknown vertex '" + label + "'");
    return it->second;
  }
};

std::pair<int, int> parse_edge_entry(const json& entry, const LabelTable& table,
                                     const std::string& where) {
  if (!entry.is_array() || entry.size() != 2)
    throw ParseError(where + ": edge must be [from, to]");
  int u = table.resolve(require_string(entry[0], where), where);
  int v = table.resolve(require_string(entry[1], where), where);
  if (u == v) throw ValidationError(where + ": self-loop");
  return {u, v};
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  reject_unknown_fields(doc, {"problem", "vertices", "edges", "commodities", "target", "path_length"},
                        "instance");

  Instance instance;
  const std::string problem = require_string(require_field(doc, "problem", "instance"), "problem");
  auto variant = variant_from_string(problem);
  if (!variant) throw ValidationError("problem must be one of SPP, RSPP, RSPP_PL");
  instance.variant = *variant;

  const json& vertices = require_field(doc, "vertices", "instance");
  if (!vertices.is_array()) throw ParseError("vertices: expected a list");
  std::vector<std::string> labels;
  LabelTable table;
  for (const auto& v : vertices) {
    std::string label = require_string(v, "vertices");
    if (table.index.count(label)) throw ValidationError("duplicate vertex label '" + label + "'");
    table.index[label] = static_cast<int>(labels.size());
    labels.push_back(label);
  }
  instance.graph = Digraph(static_cast<int>(labels.size()), labels);

  const json& edges = require_field(doc, "edges", "instance");
  if (!edges.is_array()) throw ParseError("edges: expected a list");
  for (const auto& e : edges) {
    auto [u, v] = parse_edge_entry(e, table, "edges");
    if (!instance.graph.add_edge(u, v))
      throw ValidationError("duplicate edge " + labels[u] + " -> " + labels[v]);
  }

  const json& commodities = require_field(doc, "commodities", "instance");
  if (!commodities.is_array()) throw ParseError("commodities: expected a list");
  for (size_t i = 0; i < commodities.size(); ++i) {
    const std::string where = "commodity #" + std::to_string(i);
    const json& c = commodities[i];
    if (!c.is_object()) throw ParseError(where + ": expected an object");
    reject_unknown_fields(c, {"source", "destination", "path"}, where);
    Commodity k;
    k.source = table.resolve(require_string(require_field(c, "source", where), where), where);
    k.destination =
        table.resolve(require_string(require_field(c, "destination", where), where), where);
    if (auto it = c.find("path"); it != c.end()) {
      if (!it->is_array()) throw ParseError(where + ": path must be a list of labels");
      std::vector<int> path;
      for (const auto& step : *it)
        path.push_back(table.resolve(require_string(step, where), where));
      k.route = std::move(path);
    }
    instance.commodities.push_back(std::move(k));
  }

  instance.target = require_int(require_field(doc, "target", "instance"), "target");
  if (auto it = doc.find("path_length"); it != doc.end())
    instance.path_length = require_int(*it, "path_length");

  check_instance(instance);
  return instance;
}

std::string serialize_instance(const Instance& instance, const std::vector<std::string>& comments) {
  json doc;
  doc["problem"] = to_string(instance.variant);
  doc["vertices"] = instance.graph.labels();
  json edges = json::array();
  for (auto [u, v] : instance.graph.edges())
    edges.push_back({instance.graph.label(u), instance.graph.label(v)});
  doc["edges"] = std::move(edges);
  json commodities = json::array();
  for (const Commodity& k : instance.commodities) {
    json c;
    c["source"] = instance.graph.label(k.source);
    c["destination"] = instance.graph.label(k.destination);
    if (k.route) {
      json path = json::array();
      for (int v : *k.route) path.push_back(instance.graph.label(v));
      c["path"] = std::move(path);
    }
    commodities.push_back(std::move(c));
  }
  doc["commodities"] = std::move(commodities);
  doc["target"] = instance.target;
  if (instance.path_length) doc["path_length"] = *instance.path_length;

  std::string out;
  for (const auto& line : comments) out += "# " + line + "\n";
  out += doc.dump(2);
  out += "\n";
  return out;
}

Digraph parse_solution(const std::string& text, const Instance& instance) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("solution document must be an object");
  reject_unknown_fields(doc, {"edges"}, "solution");
  LabelTable table;
  for (int v = 0; v < instance.graph.vertex_count(); ++v)
    table.index[instance.graph.label(v)] = v;
  Digraph h(instance.graph.vertex_count(), instance.graph.labels());
  const json& edges = require_field(doc, "edges", "solution");
  if (!edges.is_array()) throw ParseError("edges: expected a list");
  for (const auto& e : edges) {
    auto [u, v] = parse_edge_entry(e, table, "edges");
    if (!h.add_edge(u, v))
      throw ValidationError("duplicate edge " + instance.graph.label(u) + " -> " +
                            instance.graph.label(v));
  }
  return h;
}

std::string serialize_solution(const Digraph& solution, const std::vector<std::string>& comments) {
  json doc;
  json edges = json::array();
  for (auto [u, v] : solution.edges()) edges.push_back({solution.label(u), solution.label(v)});
  doc["edges"] = std::move(edges);
  std::string out;
  for (const auto& line : comments) out += "# " + line + "\n";
  out += doc.dump(2);
  out += "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << contents;
}

}  // namespace sortnet

#include "mdse/document.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mdse/error.hpp"

namespace mdse {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  fail(ErrorCode::SchemaError, path + ": " + message);
}

void expect_keys(const json& obj, const std::string& path, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) schema_error(path, std::string("missing field \"") + key + "\"");
  }
  std::set<std::string> allowed;
  for (const char* key : required) allowed.insert(key);
  for (const char* key : optional) allowed.insert(key);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) schema_error(path, "unexpected field \"" + it.key() + "\"");
  }
}

const json& array_field(const json& obj, const char* key, const std::string& path) {
  const json& value = obj.at(key);
  if (!value.is_array()) schema_error(path + "." + key, "expected an array");
  return value;
}

double number(const json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  return value.get<double>();
}

std::uint32_t vertex_index(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0 ||
      value.get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
    schema_error(path, "expected a non-negative integer vertex id");
  }
  return static_cast<std::uint32_t>(value.get<std::int64_t>());
}

// Re-throw builder errors with the document location prepended.
template <typename Fn>
auto at_location(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t j = 0; j < byte && j < text.size(); ++j) {
    if (text[j] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

MdseGraph parse_graph(std::string_view document, ConstructionChecks checks) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(document, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": " << e.what();
    fail(ErrorCode::SyntaxError, msg.str());
  }

  expect_keys(root, "$", {"version", "groups", "events", "edges"});
  const json& version = root.at("version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kDocumentVersion) {
    schema_error("$.version", "expected version " + std::to_string(kDocumentVersion));
  }

  GraphBuilder builder(checks);

  const json& groups = array_field(root, "groups", "$");
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string path = "$.groups[" + std::to_string(g) + "]";
    expect_keys(groups[g], path, {"role", "priors"});
    const json& role = groups[g].at("role");
    if (role != "star" && role != "prime") schema_error(path + ".role", "expected \"star\" or \"prime\"");
    const json& priors_json = array_field(groups[g], "priors", path);
    std::vector<double> priors;
    for (std::size_t j = 0; j < priors_json.size(); ++j) {
      priors.push_back(number(priors_json[j], path + ".priors[" + std::to_string(j) + "]"));
    }
    at_location(path, [&] {
      return builder.add_hypothesis_group(priors, role == "star" ? GroupRole::Star : GroupRole::Prime);
    });
  }

  const json& events = array_field(root, "events", "$");
  for (std::size_t j = 0; j < events.size(); ++j) {
    const std::string path = "$.events[" + std::to_string(j) + "]";
    expect_keys(events[j], path, {"kind"}, {"label"});
    const json& kind = events[j].at("kind");
    if (kind != "star" && kind != "prime") schema_error(path + ".kind", "expected \"star\" or \"prime\"");
    std::optional<std::string> label;
    if (events[j].contains("label")) {
      if (!events[j].at("label").is_string()) schema_error(path + ".label", "expected a string");
      label = events[j].at("label").get<std::string>();
    }
    builder.add_event(kind == "star" ? EventKind::Star : EventKind::Prime, std::move(label));
  }

  const json& edges = array_field(root, "edges", "$");
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const std::string path = "$.edges[" + std::to_string(j) + "]";
    expect_keys(edges[j], path, {"src", "dst", "weight"});
    const NodeId src{vertex_index(edges[j].at("src"), path + ".src")};
    const NodeId dst{vertex_index(edges[j].at("dst"), path + ".dst")};
    const double weight = number(edges[j].at("weight"), path + ".weight");
    at_location(path, [&] { builder.add_edge(src, dst, weight); });
  }

  return builder.freeze();
}

std::string serialize_graph(const MdseGraph& graph) {
  // Canonical numbering: hypotheses in group/member order, then events.
  std::vector<std::uint32_t> renumber(graph.vertex_count(), 0);
  std::uint32_t next = 0;
  for (const auto& g : graph.groups()) {
    for (const auto& h : g.members) renumber[h.id.value] = next++;
  }
  for (const auto& ev : graph.events()) renumber[ev.id.value] = next++;

  std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  for (Edge& e : edges) {
    e.src.value = renumber[e.src.value];
    e.dst.value = renumber[e.dst.value];
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  // Objects are assembled from dumped fragments so the key order is fixed.
  std::vector<std::string> group_lines;
  for (const auto& g : graph.groups()) {
    json priors = json::array();
    for (const auto& h : g.members) priors.push_back(h.prior);
    group_lines.push_back("{\"role\":" + json(std::string(to_string(g.role))).dump() +
                          ",\"priors\":" + priors.dump() + "}");
  }
  std::vector<std::string> event_lines;
  for (const auto& ev : graph.events()) {
    std::string line = "{\"kind\":" + json(std::string(to_string(ev.kind))).dump();
    if (ev.label) line += ",\"label\":" + json(*ev.label).dump();
    event_lines.push_back(line + "}");
  }
  std::vector<std::string> edge_lines;
  for (const Edge& e : edges) {
    edge_lines.push_back("{\"src\":" + std::to_string(e.src.value) + ",\"dst\":" +
                         std::to_string(e.dst.value) + ",\"weight\":" + json(e.weight).dump() + "}");
  }
  std::string out = "{\n  \"version\": " + std::to_string(kDocumentVersion) + ",\n";
  const auto emit = [&out](const char* key, const std::vector<std::string>& lines, bool last) {
    out += "  \"";
    out += key;
    out += "\": [";
    for (std::size_t j = 0; j < lines.size(); ++j) {
      out += j == 0 ? "\n    " : ",\n    ";
      out += lines[j];
    }
    out += lines.empty() ? "]" : "\n  ]";
    out += last ? "\n" : ",\n";
  };
  emit("groups", group_lines, false);
  emit("events", event_lines, false);
  emit("edges", edge_lines, true);
  out += "}\n";
  return out;
}

MdseGraph load_graph_file(const std::filesystem::path& path, ConstructionChecks checks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_graph(buffer.str(), checks);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_graph_file(const std::filesystem::path& path, const MdseGraph& graph) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write " + path.string());
  }
  out << serialize_graph(graph);
  if (!out) {
    fail(ErrorCode::IoError, "write failed for " + path.string());
  }
}

}  // namespace mdse

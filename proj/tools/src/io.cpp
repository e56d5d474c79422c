// Copyright 2026 The lqcover Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lqcover/cli/io.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "lqcover/cli/report.hpp"
#include "lqcover/error.hpp"

namespace lqcover::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  fail(ErrorCode::kParse, what);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

std::size_t as_index(const Json& v, const char* what) {
  if (!v.is_number_unsigned()) {
    parse_fail(std::string(what) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double as_number(const Json& v, const char* what) {
  if (!v.is_number()) parse_fail(std::string(what) + " must be a number");
  return v.get<double>();
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    parse_fail(std::string("missing field '") + key + "'");
  }
  return obj[key];
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

InstanceHeader parse_header(const std::string& text) {
  const Json j = parse_json(text);
  InstanceHeader h;
  h.n = as_index(field(j, "n"), "n");
  h.d = as_index(field(j, "d"), "d");
  h.a_min = as_number(field(j, "a_min"), "a_min");
  h.a_max = as_number(field(j, "a_max"), "a_max");
  if (j.contains("disjoint")) {
    if (!j["disjoint"].is_boolean()) parse_fail("disjoint must be a boolean");
    h.disjoint = j["disjoint"].get<bool>();
  }
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) parse_fail("terms must be an array");
  for (const Json& t : terms) {
    NormTerm term;
    const Json& set = field(t, "set");
    if (!set.is_array()) parse_fail("term set must be an array");
    for (const Json& i : set) term.set.push_back(as_index(i, "term index"));
    term.weight = as_number(field(t, "c"), "c");
    term.exponent = as_number(field(t, "q"), "q");
    h.terms.push_back(std::move(term));
  }
  try {
    h.validate();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return h;
}

CoveringConstraint parse_row(const std::string& text) {
  const Json j = parse_json(text);
  const Json& entries = field(j, "entries");
  if (!entries.is_array()) parse_fail("entries must be an array");
  CoveringConstraint row;
  for (const Json& e : entries) {
    if (!e.is_array() || e.size() != 2) {
      parse_fail("each entry must be [index, coeff]");
    }
    row.entries.push_back({as_index(e[0], "index"), as_number(e[1], "coeff")});
  }
  return row;
}

InstanceReader::InstanceReader(std::istream& in) : in_(in) {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!blank(text)) break;
  }
  if (blank(text)) parse_fail("line 1: missing instance header");
  try {
    header_ = parse_header(text);
  } catch (const Error& e) {
    parse_fail("line " + std::to_string(line_) + ": " + e.what());
  }
}

std::optional<CoveringConstraint> InstanceReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (blank(text)) continue;
    try {
      CoveringConstraint row = parse_row(text);
      validate_constraint(header_, row);
      return row;
    } catch (const Error& e) {
      parse_fail("line " + std::to_string(line_) + ": " + e.what());
    }
  }
  return std::nullopt;
}

std::string format_header(const InstanceHeader& header) {
  return dump(to_json(header));
}

std::string format_row(const CoveringConstraint& row) {
  Json entries = Json::array();
  for (const Entry& e : row.entries) entries.push_back({e.index, e.coeff});
  return dump(Json{{"entries", entries}});
}

void write_instance(std::ostream& out, const InstanceHeader& header,
                    std::span<const CoveringConstraint> rows) {
  out << format_header(header) << '\n';
  for (const CoveringConstraint& r : rows) out << format_row(r) << '\n';
}

BabNetwork GraphSpec::bab_network() const {
  BabNetwork net;
  net.graph = Digraph(nodes);
  for (const GraphEdge& e : edges) {
    net.add_edge(e.from, e.to, e.fixed, e.incremental);
  }
  net.validate();
  return net;
}

RoutingNetwork GraphSpec::routing_network() const {
  RoutingNetwork net;
  net.graph = Digraph(nodes);
  for (const GraphEdge& e : edges) net.graph.add_edge(e.from, e.to);
  net.groups = groups;
  net.validate();
  return net;
}

GraphSpec parse_graph(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const Json j = parse_json(buf.str());
  GraphSpec g;
  g.nodes = as_index(field(j, "nodes"), "nodes");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) parse_fail("edges must be an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Json& e = edges[k];
    const std::string where = "edge " + std::to_string(k) + ": ";
    if (!e.is_array() || (e.size() != 2 && e.size() != 4)) {
      parse_fail(where + "expected [u, v] or [u, v, c, l]");
    }
    GraphEdge edge;
    edge.from = as_index(e[0], "edge endpoint");
    edge.to = as_index(e[1], "edge endpoint");
    if (edge.from >= g.nodes || edge.to >= g.nodes) {
      parse_fail(where + "unknown node id");
    }
    if (edge.from == edge.to) parse_fail(where + "self-loop");
    if (e.size() == 4) {
      edge.fixed = as_number(e[2], "fixed cost");
      edge.incremental = as_number(e[3], "incremental cost");
    }
    g.edges.push_back(edge);
  }
  if (j.contains("groups")) {
    const Json& groups = j["groups"];
    if (!groups.is_array()) parse_fail("groups must be an array");
    for (const Json& gr : groups) {
      CapacityGroup cg;
      const Json& ids = field(gr, "edges");
      if (!ids.is_array()) parse_fail("group edges must be an array");
      for (const Json& id : ids) cg.edges.push_back(as_index(id, "edge id"));
      try {
        cg.p = number_or_inf(field(gr, "p"));
      } catch (const Error&) {
        parse_fail("group p must be a number or \"inf\"");
      }
      cg.capacity = as_number(field(gr, "c"), "group capacity");
      g.groups.push_back(std::move(cg));
    }
  }
  return g;
}

std::string format_graph(const GraphSpec& graph) {
  Json edges = Json::array();
  for (const GraphEdge& e : graph.edges) {
    edges.push_back({e.from, e.to, e.fixed, e.incremental});
  }
  Json groups = Json::array();
  for (const CapacityGroup& g : graph.groups) {
    groups.push_back({{"edges", g.edges},
                      {"p", std::isinf(g.p) ? Json("inf") : Json(g.p)},
                      {"c", g.capacity}});
  }
  return dump(Json{{"nodes", graph.nodes}, {"edges", edges}, {"groups", groups}});
}

std::vector<Event> parse_events(std::istream& in, std::size_t nodes) {
  std::vector<Event> out;
  std::string text;
  while (std::getline(in, text)) {
    if (blank(text) || text.front() == '#') continue;
    const std::string where = "event " + std::to_string(out.size()) + ": ";
    std::istringstream ls(text);
    std::string kind;
    long long s = -1;
    long long t = -1;
    std::string extra;
    if (!(ls >> kind >> s >> t) || (ls >> extra)) {
      parse_fail(where + "expected 'pair s t' or 'request s t'");
    }
    Event ev;
    if (kind == "pair") {
      ev.kind = EventKind::kPair;
    } else if (kind == "request") {
      ev.kind = EventKind::kRequest;
    } else {
      parse_fail(where + "unknown event kind '" + kind + "'");
    }
    if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= nodes ||
        static_cast<std::size_t>(t) >= nodes) {
      parse_fail(where + "unknown node id");
    }
    ev.source = static_cast<std::size_t>(s);
    ev.sink = static_cast<std::size_t>(t);
    out.push_back(ev);
  }
  return out;
}

}  // namespace lqcover::cli

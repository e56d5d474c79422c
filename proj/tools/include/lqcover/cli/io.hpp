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

#pragma once

// Text formats. An instance file is one JSON header line followed by one
// covering row per line:
//
//   {"n":2,"d":2,"a_min":1,"a_max":1,"terms":[{"set":[0,1],"c":1,"q":2}],"disjoint":true}
//   {"entries":[[0,1.0],[1,1.0]]}
//
// A graph file is a single JSON document
//
//   {"nodes":3,"edges":[[0,1,2.0,0.5],[1,2]],"groups":[{"edges":[0,1],"p":"inf","c":4}]}
//
// and an event file has one "pair s t" or "request s t" per line.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lqcover/buyatbulk.hpp"
#include "lqcover/model.hpp"
#include "lqcover/routing.hpp"

namespace lqcover::cli {

/// Streams rows one line at a time so input can arrive through a pipe.
class InstanceReader {
 public:
  /// Reads and validates the header line. Throws kParse.
  explicit InstanceReader(std::istream& in);

  const InstanceHeader& header() const { return header_; }
  /// Next row, or nullopt at end of input. Throws kParse with the line
  /// number on malformed rows.
  std::optional<CoveringConstraint> next();
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  InstanceHeader header_;
  std::size_t line_ = 0;
};

InstanceHeader parse_header(const std::string& text);
CoveringConstraint parse_row(const std::string& text);

std::string format_header(const InstanceHeader& header);
std::string format_row(const CoveringConstraint& row);
void write_instance(std::ostream& out, const InstanceHeader& header,
                    std::span<const CoveringConstraint> rows);

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double fixed = 1.0;
  double incremental = 0.0;
};

struct GraphSpec {
  std::size_t nodes = 0;
  std::vector<GraphEdge> edges;
  std::vector<CapacityGroup> groups;

  BabNetwork bab_network() const;
  RoutingNetwork routing_network() const;
};

GraphSpec parse_graph(std::istream& in);
std::string format_graph(const GraphSpec& graph);

enum class EventKind { kPair, kRequest };

struct Event {
  EventKind kind = EventKind::kPair;
  std::size_t source = 0;
  std::size_t sink = 0;
};

/// Throws kParse naming the event index (0-based) for malformed lines and
/// node ids >= nodes.
std::vector<Event> parse_events(std::istream& in, std::size_t nodes);

}  // namespace lqcover::cli

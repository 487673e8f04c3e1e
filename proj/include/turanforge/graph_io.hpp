#pragma once

#include "turanforge/graph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace turanforge {

/// Standard graph6 encoding (no ">>graph6<<" header, no trailing newline).
std::string encode_graph6(const Graph& g);

/// Accepts an optional ">>graph6<<" header and one trailing newline.
Graph decode_graph6(std::string_view text);

// "n m" then m lines "u v".
std::string write_edge_list(const Graph& g);
Graph read_edge_list(std::string_view text);

enum class GraphFormat { Graph6, EdgeList };

// Edge lists start with a digit; graph6 bytes are all >= 63, so never digits.
GraphFormat detect_format(std::string_view text);
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);

}  // namespace turanforge

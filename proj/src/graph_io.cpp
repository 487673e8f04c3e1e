#include "turanforge/graph_io.hpp"

#include "turanforge/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace turanforge {

namespace {

constexpr int kBias = 63;
constexpr std::string_view kHeader = ">>graph6<<";

void append_size(std::string& out, std::int64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  }
}

int sextet(char c) {
  const int v = static_cast<unsigned char>(c) - kBias;
  if (v < 0 || v > 63) throw DomainError("graph6: byte outside the printable range 63..126");
  return v;
}

}  // namespace

std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  if (n < 1) throw DomainError("graph6: need at least one vertex");
  std::string out;
  append_size(out, n);
  int acc = 0;
  int used = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(acc + kBias));
        acc = 0;
        used = 0;
      }
    }
  }
  if (used > 0) out.push_back(static_cast<char>((acc << (6 - used)) + kBias));
  return out;
}

Graph decode_graph6(std::string_view text) {
  if (text.starts_with(kHeader)) text.remove_prefix(kHeader.size());
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw DomainError("graph6: empty input");
  std::size_t pos = 0;
  std::int64_t n = 0;
  if (text[0] != 126) {
    n = sextet(text[0]);
    pos = 1;
  } else if (text.size() >= 2 && text[1] != 126) {
    if (text.size() < 4) throw DomainError("graph6: truncated size field");
    for (std::size_t k = 1; k <= 3; ++k) n = (n << 6) | sextet(text[k]);
    pos = 4;
  } else {
    if (text.size() < 8) throw DomainError("graph6: truncated size field");
    for (std::size_t k = 2; k <= 7; ++k) n = (n << 6) | sextet(text[k]);
    pos = 8;
  }
  if (n > 1'000'000) throw DomainError("graph6: vertex count too large");
  const std::int64_t bits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (text.size() - pos < need) throw DomainError("graph6: truncated adjacency data");
  if (text.size() - pos > need) throw DomainError("graph6: trailing bytes after adjacency data");
  std::vector<Edge> edges;
  std::int64_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = sextet(text[pos + static_cast<std::size_t>(k / 6)]);
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(i, j);
    }
  }
  for (std::size_t b = pos; b < text.size(); ++b) sextet(text[b]);
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
  for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Graph read_edge_list(std::string_view text) {
  std::vector<long long> nums;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) throw DomainError("edge list: expected an integer at offset " + std::to_string(i));
    i = static_cast<std::size_t>(ptr - text.data());
    nums.push_back(value);
  }
  if (nums.size() < 2) throw DomainError("edge list: missing \"n m\" header");
  const long long n = nums[0];
  const long long m = nums[1];
  if (n < 0 || m < 0 || n > 1'000'000) throw DomainError("edge list: bad header");
  if (static_cast<long long>(nums.size()) != 2 + 2 * m) {
    throw DomainError("edge list: header announces " + std::to_string(m) + " edges but body has " +
                      std::to_string((nums.size() - 2) / 2) + (nums.size() % 2 ? " and a dangling endpoint" : ""));
  }
  std::vector<Edge> edges;
  for (long long e = 0; e < m; ++e) {
    const long long u = nums[static_cast<std::size_t>(2 + 2 * e)];
    const long long v = nums[static_cast<std::size_t>(3 + 2 * e)];
    if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("edge list: endpoint out of range");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  return Graph::from_edge_list(static_cast<int>(n), edges);
}

GraphFormat detect_format(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return std::isdigit(static_cast<unsigned char>(c)) ? GraphFormat::EdgeList : GraphFormat::Graph6;
  }
  throw DomainError("empty graph input");
}

Graph parse_graph(std::string_view text) {
  if (detect_format(text) == GraphFormat::EdgeList) return read_edge_list(text);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return decode_graph6(text);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace turanforge

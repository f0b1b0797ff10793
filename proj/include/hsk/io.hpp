#pragma once

// Instance file format:
//
//   c <comment>             any line starting with 'c', anywhere
//   p hs <n> <m> <d> <k>    header, exactly once, before the edges
//   <v1> <v2> ...           m edge lines of 1-based vertex indices
//
// Blank lines are ignored.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hsk/core.hpp"
#include "hsk/errors.hpp"

namespace hsk {

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw FormatError(std::string("expected an integer for ") + what + ", got '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
  std::vector<std::string> comments;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  int d = 0;
  std::int64_t k = 0;
  std::vector<std::vector<VertexId>> edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view line = text.substr(pos, next - pos);
    pos = next + 1;
    ++line_no;

    const auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == 'c') {
      std::string_view rest = line.substr(line.find('c') + 1);
      if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
      while (!rest.empty() && rest.back() == '\r') rest.remove_suffix(1);
      comments.emplace_back(rest);
      continue;
    }
    if (!have_header) {
      if (tokens.size() != 6 || tokens[0] != "p" || tokens[1] != "hs") {
        throw FormatError("expected header 'p hs <n> <m> <d> <k>'", line_no);
      }
      n = detail::parse_int<std::size_t>(tokens[2], line_no, "n");
      m = detail::parse_int<std::size_t>(tokens[3], line_no, "m");
      d = detail::parse_int<int>(tokens[4], line_no, "d");
      k = detail::parse_int<std::int64_t>(tokens[5], line_no, "k");
      if (d < 3) throw UnsupportedParameter("line " + std::to_string(line_no) + ": d must be at least 3");
      have_header = true;
      continue;
    }
    if (tokens[0] == "p") throw FormatError("duplicate header", line_no);
    if (edges.size() == m) throw FormatError("more than " + std::to_string(m) + " edge lines", line_no);
    std::vector<VertexId> edge;
    for (auto token : tokens) {
      const auto index = detail::parse_int<std::uint64_t>(token, line_no, "a vertex index");
      if (index < 1 || index > n) {
        throw FormatError("vertex index " + std::string(token) + " outside [1, " + std::to_string(n) + "]", line_no);
      }
      edge.push_back(static_cast<VertexId>(index - 1));
    }
    if (Edge(edge).size() > static_cast<std::size_t>(d)) {
      throw FormatError("edge has more than d = " + std::to_string(d) + " distinct vertices", line_no);
    }
    edges.push_back(std::move(edge));
  }
  if (!have_header) throw FormatError("missing header 'p hs <n> <m> <d> <k>'");
  if (edges.size() != m) {
    throw FormatError("header promises " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  Instance inst = Instance::from_ids(n, edges, d, k);
  inst.comments = std::move(comments);
  return inst;
}

// Canonical form: comments, header, then edges in lexicographic order.
inline std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  for (const auto& c : inst.comments) out << "c " << c << '\n';
  out << "p hs " << inst.vertex_count() << ' ' << inst.edge_count() << ' ' << inst.max_edge_size() << ' ' << inst.k
      << '\n';
  for (const Edge& e : inst.graph.edges()) {
    if (e.empty()) throw ContractError("write_instance: the empty edge has no file representation");
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << (e[i] + 1);
    out << '\n';
  }
  return out.str();
}

}  // namespace hsk

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "earreg/ear_decomposition.hpp"
#include "earreg/graph.hpp"

namespace earreg {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Edge list: one "u v" pair of non-negative integers per line. Text after '#'
// is ignored, as are blank lines. Repeated edges are merged.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);

// Decomposition file:
//   base <v>
//   path <v0> <v1> ... <vl>     (one line per ear, in order)
// with the same comment and blank-line rules.
EarDecomposition read_decomposition(std::istream& in);
EarDecomposition read_decomposition_file(const std::filesystem::path& path);
void write_decomposition(std::ostream& out, const EarDecomposition& d);
std::string to_decomposition_text(const EarDecomposition& d);

/// Graphviz rendering; when a decomposition is given, edges carry the index
/// of the path they belong to.
std::string to_dot(const Graph& g, const EarDecomposition* d = nullptr);

}  // namespace earreg

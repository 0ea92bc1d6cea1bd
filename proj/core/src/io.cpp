#include "earreg/io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace earreg {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  const std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) {
    out.push_back(t);
  }
  return out;
}

Vertex parse_vertex(const std::string& token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  }
  if (value > std::numeric_limits<Vertex>::max()) {
    throw ParseError(line, "vertex id " + token + " is too large");
  }
  return static_cast<Vertex>(value);
}

std::ifstream open_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const auto tokens = tokens_of(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError(number, "expected two vertex ids, got " + std::to_string(tokens.size()) + " tokens");
    }
    const Vertex a = parse_vertex(tokens[0], number);
    const Vertex b = parse_vertex(tokens[1], number);
    if (a == b) {
      throw ParseError(number, "self-loop at vertex " + tokens[0]);
    }
    edges.push_back(Edge::make(a, b));
  }
  if (edges.empty()) {
    throw ParseError(0, "edge list contains no edges");
  }
  return Graph::from_edges(std::span<const Edge>(edges));
}

Graph read_edge_list_file(const std::filesystem::path& path) {
  auto in = open_file(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << '\n';
  }
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

EarDecomposition read_decomposition(std::istream& in) {
  std::optional<Vertex> base;
  std::vector<std::vector<Vertex>> paths;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const auto tokens = tokens_of(line);
    if (tokens.empty()) {
      continue;
    }
    if (tokens[0] == "base") {
      if (base) {
        throw ParseError(number, "base given twice");
      }
      if (tokens.size() != 2) {
        throw ParseError(number, "base takes exactly one vertex");
      }
      base = parse_vertex(tokens[1], number);
    } else if (tokens[0] == "path") {
      if (!base) {
        throw ParseError(number, "path before base");
      }
      if (tokens.size() < 3) {
        throw ParseError(number, "path needs at least two vertices");
      }
      std::vector<Vertex> path;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        path.push_back(parse_vertex(tokens[k], number));
      }
      paths.push_back(std::move(path));
    } else {
      throw ParseError(number, "unknown record '" + tokens[0] + "', expected 'base' or 'path'");
    }
  }
  if (!base) {
    throw ParseError(0, "decomposition has no base record");
  }
  if (paths.empty()) {
    throw ParseError(0, "decomposition has no paths");
  }
  return EarDecomposition(*base, std::move(paths));
}

EarDecomposition read_decomposition_file(const std::filesystem::path& path) {
  auto in = open_file(path);
  return read_decomposition(in);
}

void write_decomposition(std::ostream& out, const EarDecomposition& d) {
  out << "base " << d.base() << '\n';
  for (const Ear& ear : d.ears()) {
    out << "path";
    for (Vertex v : ear.path) {
      out << ' ' << v;
    }
    out << '\n';
  }
}

std::string to_decomposition_text(const EarDecomposition& d) {
  std::ostringstream out;
  write_decomposition(out, d);
  return out.str();
}

std::string to_dot(const Graph& g, const EarDecomposition* d) {
  std::map<Edge, std::size_t> owner;
  if (d) {
    for (std::size_t i = 1; i <= d->ear_count(); ++i) {
      for (const Edge& e : d->ear(i).edges()) {
        owner[e] = i;
      }
    }
  }
  std::ostringstream out;
  out << "graph G {\n";
  for (Vertex v : g.vertices()) {
    out << "  " << v << (d && v == d->base() ? " [shape=doublecircle]" : "") << ";\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (auto it = owner.find(e); it != owner.end()) {
      out << " [label=\"P" << it->second << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace earreg

#pragma once
// Text formats for Cayley tables, graphs and codes.
//
//   .cayley  line 1: n; then n rows of n 0-based indices (row g, column h = g·h)
//   graph    line 1: m k; then k lines "u v [color]"
//   code     line 1: p d m; then d rows of m digits (separated or packed)

#include <string>

#include "gpi/fp.hpp"
#include "gpi/graph.hpp"
#include "gpi/group.hpp"

namespace gpi {

// kind "ParseError"; line() is 1-based, 0 when the file could not be read.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& detail)
      : Error("ParseError", "line " + std::to_string(line) + ": " + detail), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Syntax problems throw ParseError; tables that fail the group axioms throw
// Error with kind "ValidationError".
CayleyTable parse_cayley_text(const std::string& text);
CayleyTable parse_cayley(const std::string& path);
std::string format_cayley(const CayleyTable& G);
void write_cayley(const CayleyTable& G, const std::string& path);

Graph parse_graph_text(const std::string& text);
Graph parse_graph(const std::string& path);
std::string format_graph(const Graph& X);

FpMatrix parse_code_text(const std::string& text);
FpMatrix parse_code(const std::string& path);
std::string format_code(const FpMatrix& A);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace gpi

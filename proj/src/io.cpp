#include "gpi/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gpi {
namespace {

struct Line {
  int no;
  std::vector<std::string> tokens;
};

// Non-blank lines with their 1-based numbers.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string s;
  int no = 0;
  while (std::getline(in, s)) {
    ++no;
    std::istringstream ls(s);
    Line l{no, {}};
    std::string t;
    while (ls >> t) l.tokens.push_back(t);
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

long long to_int(const std::string& t, int line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) throw ParseError(line, "not an integer: '" + t + "'");
  return v;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("IOError", "cannot write " + path);
  f << text;
  if (!f) throw Error("IOError", "write failed for " + path);
}

CayleyTable parse_cayley_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const Line& head = lines[0];
  if (head.tokens.size() != 1) throw ParseError(head.no, "expected the order alone");
  long long n = to_int(head.tokens[0], head.no);
  if (n < 1 || n > 65535) throw ParseError(head.no, "order out of range");
  if (lines.size() != std::size_t(n) + 1) {
    int at = lines.size() > std::size_t(n) + 1 ? lines[n + 1].no : lines.back().no + 1;
    throw ParseError(at, "expected " + std::to_string(n) + " rows");
  }
  std::vector<int> grid(std::size_t(n) * n);
  for (long long r = 0; r < n; ++r) {
    const Line& l = lines[r + 1];
    if (l.tokens.size() != std::size_t(n)) throw ParseError(l.no, "expected " + std::to_string(n) + " entries");
    for (long long c = 0; c < n; ++c) {
      long long v = to_int(l.tokens[c], l.no);
      if (v < 0 || v >= n) throw ParseError(l.no, "entry out of range");
      grid[std::size_t(r) * n + c] = int(v);
    }
  }
  try {
    return validate_table(int(n), grid);
  } catch (const Error& e) {
    throw Error("ValidationError", e.what());
  }
}

CayleyTable parse_cayley(const std::string& path) { return parse_cayley_text(read_file(path)); }

std::string format_cayley(const CayleyTable& G) {
  int n = G.order();
  std::string s = std::to_string(n) + "\n";
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (h) s += ' ';
      s += std::to_string(G.mul(g, h));
    }
    s += '\n';
  }
  return s;
}

void write_cayley(const CayleyTable& G, const std::string& path) { write_file(path, format_cayley(G)); }

Graph parse_graph_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const Line& head = lines[0];
  if (head.tokens.size() != 2) throw ParseError(head.no, "expected 'm k'");
  Graph X;
  X.m = int(to_int(head.tokens[0], head.no));
  long long k = to_int(head.tokens[1], head.no);
  if (X.m < 0 || k < 0) throw ParseError(head.no, "negative size");
  if (lines.size() != std::size_t(k) + 1) throw ParseError(lines.back().no, "expected " + std::to_string(k) + " edges");
  bool colored = false;
  for (long long i = 0; i < k; ++i) {
    const Line& l = lines[i + 1];
    if (l.tokens.size() < 2 || l.tokens.size() > 3) throw ParseError(l.no, "expected 'u v [color]'");
    int u = int(to_int(l.tokens[0], l.no)), v = int(to_int(l.tokens[1], l.no));
    if (u < 0 || v < 0 || u >= X.m || v >= X.m) throw ParseError(l.no, "vertex out of range");
    X.edges.push_back({u, v});
    int c = l.tokens.size() == 3 ? int(to_int(l.tokens[2], l.no)) : 0;
    colored = colored || l.tokens.size() == 3;
    X.edge_colors.push_back(c);
  }
  if (!colored) X.edge_colors.clear();
  X.check();
  return X;
}

Graph parse_graph(const std::string& path) { return parse_graph_text(read_file(path)); }

std::string format_graph(const Graph& X) {
  std::string s = std::to_string(X.m) + " " + std::to_string(X.edges.size()) + "\n";
  for (std::size_t i = 0; i < X.edges.size(); ++i) {
    s += std::to_string(X.edges[i].first) + " " + std::to_string(X.edges[i].second);
    if (!X.edge_colors.empty()) s += " " + std::to_string(X.edge_colors[i]);
    s += '\n';
  }
  return s;
}

FpMatrix parse_code_text(const std::string& text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty input");
  const Line& head = lines[0];
  if (head.tokens.size() != 3) throw ParseError(head.no, "expected 'p d m'");
  long long p = to_int(head.tokens[0], head.no), d = to_int(head.tokens[1], head.no),
            m = to_int(head.tokens[2], head.no);
  if (!is_prime(p) || d < 0 || m < 0) throw ParseError(head.no, "bad header");
  if (lines.size() != std::size_t(d) + 1) throw ParseError(lines.back().no, "expected " + std::to_string(d) + " rows");
  FpMatrix A{int(p), int(d), int(m)};
  for (long long r = 0; r < d; ++r) {
    const Line& l = lines[r + 1];
    std::vector<long long> vals;
    if (l.tokens.size() == std::size_t(m)) {
      for (const auto& t : l.tokens) vals.push_back(to_int(t, l.no));
    } else if (l.tokens.size() == 1 && l.tokens[0].size() == std::size_t(m)) {
      for (char c : l.tokens[0]) {
        if (c < '0' || c > '9') throw ParseError(l.no, "not a digit");
        vals.push_back(c - '0');
      }
    } else {
      throw ParseError(l.no, "expected " + std::to_string(m) + " digits");
    }
    for (long long c = 0; c < m; ++c) {
      if (vals[c] < 0 || vals[c] >= p) throw ParseError(l.no, "digit out of range");
      A(int(r), int(c)) = int(vals[c]);
    }
  }
  return A;
}

FpMatrix parse_code(const std::string& path) { return parse_code_text(read_file(path)); }

std::string format_code(const FpMatrix& A) {
  std::string s = std::to_string(A.p) + " " + std::to_string(A.rows) + " " + std::to_string(A.cols) + "\n";
  for (int r = 0; r < A.rows; ++r) {
    for (int c = 0; c < A.cols; ++c) {
      if (c) s += ' ';
      s += std::to_string(A(r, c));
    }
    s += '\n';
  }
  return s;
}

}  // namespace gpi

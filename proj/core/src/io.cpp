#include "ddpp/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "ddpp/error.hpp"

namespace ddpp {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

// Splits into non-empty, comment-stripped token lines. A trailing ':' on a
// token is split off so `path 1: 0 2` and `path 1 : 0 2` read the same.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) {
      if (tok.size() > 1 && tok.back() == ':') {
        line.tokens.push_back(tok.substr(0, tok.size() - 1));
        line.tokens.emplace_back(":");
      } else {
        line.tokens.push_back(tok);
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

long long to_int(const Line& line, std::size_t index, const char* what) {
  if (index >= line.tokens.size()) throw ParseError(line.number, std::string("missing ") + what);
  const std::string& tok = line.tokens[index];
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line.number, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  return value;
}

void expect_arity(const Line& line, std::size_t count) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, "directive '" + line.tokens[0] + "' expects " +
                                      std::to_string(count - 1) + " arguments");
  }
}

void expect_header(const std::vector<Line>& lines, const std::string& word) {
  if (lines.empty()) throw ParseError(1, "empty input, expected '" + word + " 1' header");
  const Line& first = lines.front();
  if (first.tokens.size() != 2 || first.tokens[0] != word || first.tokens[1] != "1") {
    throw ParseError(first.number, "expected header '" + word + " 1'");
  }
}

// Parses `<word> <i> : v0 v1 ...` lines shared by solutions and brambles.
std::vector<std::vector<Vertex>> parse_indexed_lists(const std::vector<Line>& lines,
                                                     const std::string& word) {
  std::map<long long, std::vector<Vertex>> lists;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    if (line.tokens[0] != word) {
      throw ParseError(line.number, "unknown directive '" + line.tokens[0] + "'");
    }
    const long long index = to_int(line, 1, "index");
    if (line.tokens.size() < 3 || line.tokens[2] != ":") {
      throw ParseError(line.number, "expected ':' after " + word + " index");
    }
    if (index < 1) throw ParseError(line.number, word + " index must be positive");
    if (lists.count(index)) throw ParseError(line.number, "duplicate " + word + " " + std::to_string(index));
    std::vector<Vertex> items;
    for (std::size_t t = 3; t < line.tokens.size(); ++t) {
      const long long v = to_int(line, t, "vertex");
      if (v < 0 || v > 0x7fffffff) throw ParseError(line.number, "vertex out of range");
      items.push_back(static_cast<Vertex>(v));
    }
    lists.emplace(index, std::move(items));
  }
  std::vector<std::vector<Vertex>> result;
  long long expected = 1;
  for (auto& [index, items] : lists) {
    if (index != expected) {
      throw ParseError(lines.back().number, word + " " + std::to_string(expected) + " is missing");
    }
    ++expected;
    result.push_back(std::move(items));
  }
  return result;
}

}  // namespace

LinkageInstance parse_instance(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "ddpp");
  std::optional<long long> n;
  std::optional<long long> k;
  std::vector<Edge> edges;
  std::map<long long, std::pair<Vertex, Vertex>> pairs;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const Line& line = lines[l];
    const std::string& d = line.tokens[0];
    if (d == "n") {
      expect_arity(line, 2);
      if (n) throw ParseError(line.number, "vertex count given twice");
      n = to_int(line, 1, "vertex count");
      if (*n < 0 || *n > 50'000'000) throw ParseError(line.number, "vertex count out of range");
    } else if (d == "e") {
      expect_arity(line, 3);
      if (!n) throw ParseError(line.number, "edge before vertex count");
      const long long u = to_int(line, 1, "tail");
      const long long v = to_int(line, 2, "head");
      if (u < 0 || u >= *n || v < 0 || v >= *n) throw ParseError(line.number, "edge endpoint out of range");
      if (u == v) throw ParseError(line.number, "self-loop");
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else if (d == "k") {
      expect_arity(line, 2);
      if (k) throw ParseError(line.number, "pair count given twice");
      k = to_int(line, 1, "pair count");
      if (*k < 0) throw ParseError(line.number, "negative pair count");
    } else if (d == "p") {
      expect_arity(line, 4);
      if (!n || !k) throw ParseError(line.number, "pair before vertex and pair counts");
      const long long i = to_int(line, 1, "pair index");
      const long long s = to_int(line, 2, "source");
      const long long t = to_int(line, 3, "sink");
      if (i < 1 || i > *k) throw ParseError(line.number, "pair index out of range");
      if (s < 0 || s >= *n || t < 0 || t >= *n) throw ParseError(line.number, "terminal out of range");
      if (pairs.count(i)) throw ParseError(line.number, "pair " + std::to_string(i) + " given twice");
      pairs[i] = {static_cast<Vertex>(s), static_cast<Vertex>(t)};
    } else {
      throw ParseError(line.number, "unknown directive '" + d + "'");
    }
  }
  const int last = lines.back().number;
  if (!n) throw ParseError(last, "missing vertex count");
  if (!k) k = 0;
  if (static_cast<long long>(pairs.size()) != *k) throw ParseError(last, "expected " + std::to_string(*k) + " pairs");
  std::vector<Vertex> sources;
  std::vector<Vertex> sinks;
  for (const auto& [i, st] : pairs) {
    sources.push_back(st.first);
    sinks.push_back(st.second);
  }
  try {
    return LinkageInstance(Digraph(static_cast<int>(*n), edges), std::move(sources), std::move(sinks));
  } catch (const Error& e) {
    throw ParseError(last, e.what());
  }
}

std::string format_instance(const LinkageInstance& inst, const std::vector<std::string>& comments) {
  std::ostringstream out;
  out << "ddpp 1\n";
  for (const auto& c : comments) out << "# " << c << "\n";
  out << "n " << inst.graph.vertex_count() << "\n";
  for (const auto& [u, v] : inst.graph.edges()) out << "e " << u << " " << v << "\n";
  out << "k " << inst.k() << "\n";
  for (int i = 0; i < inst.k(); ++i) {
    out << "p " << i + 1 << " " << inst.sources[i] << " " << inst.sinks[i] << "\n";
  }
  return out.str();
}

PathSystem parse_solution(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "sol");
  PathSystem sol;
  sol.paths = parse_indexed_lists(lines, "path");
  return sol;
}

std::string format_solution(const PathSystem& sol) {
  std::ostringstream out;
  out << "sol 1\n";
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    out << "path " << i + 1 << ":";
    for (Vertex v : sol.paths[i]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

Bramble parse_bramble(std::string_view text) {
  const auto lines = tokenize(text);
  expect_header(lines, "bramble");
  Bramble b;
  for (auto& bag : parse_indexed_lists(lines, "bag")) b.bags.push_back(make_set(std::move(bag)));
  return b;
}

std::string format_bramble(const Bramble& b) {
  std::ostringstream out;
  out << "bramble 1\n";
  for (std::size_t i = 0; i < b.bags.size(); ++i) {
    out << "bag " << i + 1 << ":";
    for (Vertex v : b.bags[i]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorKind::InvalidInput, "cannot write " + path);
  out << content;
}

}  // namespace ddpp

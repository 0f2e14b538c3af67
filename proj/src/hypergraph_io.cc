#include "hypermatch/hypergraph_io.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace hypermatch {
namespace {

// Splits on single spaces; rejects empty fields, signs and non-digits.
std::vector<std::uint64_t> ParseRow(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = line.find(' ', pos);
    std::string_view field =
        line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (field.empty()) throw ParseError(line_no, "empty field");
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw ParseError(line_no, "not a nonnegative integer: '" + std::string(field) + "'");
    }
    values.push_back(value);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return values;
}

}  // namespace

Hypergraph ParseHypergraph(std::string_view text) {
  if (text.empty() || text.back() != '\n') {
    throw ParseError(0, "input must end with a newline");
  }
  bool have_header = false;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t m = 0;
  std::vector<Edge> edges;
  std::set<Edge> seen;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;

    std::vector<std::uint64_t> row = ParseRow(line, line_no);
    if (!have_header) {
      if (row.size() != 3) throw ParseError(line_no, "header must be 'n k m'");
      n = row[0];
      k = row[1];
      m = row[2];
      if (k < 2) throw ParseError(line_no, "uniformity must be at least 2");
      if (n > (1U << 20)) throw ParseError(line_no, "vertex count too large");
      have_header = true;
      continue;
    }
    if (row.size() != k) {
      throw ParseError(line_no, "expected " + std::to_string(k) + " vertices, got " +
                                    std::to_string(row.size()));
    }
    Edge e;
    e.reserve(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] >= n) throw ParseError(line_no, "vertex out of range");
      if (i > 0 && row[i] <= row[i - 1]) {
        throw ParseError(line_no, "row is not strictly increasing");
      }
      e.push_back(static_cast<Vertex>(row[i]));
    }
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
    if (edges.size() == m) throw ParseError(line_no, "more edges than declared");
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(0, "missing header");
  if (edges.size() != m) {
    throw ParseError(0, "declared " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));
  }
  return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges));
}

std::string SerializeHypergraph(const Hypergraph& h) {
  std::string out = std::to_string(h.n()) + " " + std::to_string(h.k()) + " " +
                    std::to_string(h.num_edges()) + "\n";
  for (const Edge& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json EdgeListToJson(const std::vector<Edge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const Edge& e : edges) out.push_back(e);
  return out;
}

nlohmann::json HypergraphToJson(const Hypergraph& h) {
  return {{"n", h.n()}, {"k", h.k()}, {"edges", EdgeListToJson(h.edges())}};
}

Hypergraph HypergraphFromJson(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    std::vector<Edge> edges = j.at("edges").get<std::vector<Edge>>();
    return Hypergraph(n, k, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad hypergraph JSON: ") + e.what());
  }
}

Hypergraph ReadHypergraphFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return HypergraphFromJson(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(std::string("bad hypergraph JSON: ") + e.what());
    }
  }
  return ParseHypergraph(text);
}

void WriteTextFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
}

}  // namespace hypermatch

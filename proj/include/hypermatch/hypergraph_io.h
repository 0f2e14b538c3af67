#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "hypermatch/hypergraph.h"
#include "json.hpp"

namespace hypermatch {

// Malformed hypergraph text. line() is 1-based; 0 means the whole input.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format:
//   n k m
//   v_1 v_2 ... v_k      (m rows, strictly increasing, 0-based)
// Lines starting with '#' are skipped. The input must end with '\n'.
Hypergraph ParseHypergraph(std::string_view text);

// Writes the header and the edges in lexicographic order.
std::string SerializeHypergraph(const Hypergraph& h);

// {"n":..,"k":..,"edges":[[..],..]}
nlohmann::json HypergraphToJson(const Hypergraph& h);
Hypergraph HypergraphFromJson(const nlohmann::json& j);

nlohmann::json EdgeListToJson(const std::vector<Edge>& edges);

Hypergraph ReadHypergraphFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace hypermatch

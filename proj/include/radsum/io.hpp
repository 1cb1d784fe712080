#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "radsum/distribution.hpp"
#include "radsum/rational.hpp"
#include "radsum/weights.hpp"

namespace radsum {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// One instance per line, comma-separated decimal or p/q tokens, '#' comments.
template <class T>
std::vector<Weights<T>> parse_weight_lines(std::istream& in) {
  std::vector<Weights<T>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<T> vals;
    std::string tok;
    std::istringstream ls(line);
    bool any = false;
    while (std::getline(ls, tok, ',')) {
      auto b = tok.find_first_not_of(" \t\r");
      if (b == std::string::npos) {
        if (any) throw ParseError(lineno, "empty token");
        continue;
      }
      auto e = tok.find_last_not_of(" \t\r");
      try {
        vals.push_back(parse_number<T>(std::string_view(tok).substr(b, e - b + 1)));
      } catch (const std::invalid_argument& ex) {
        throw ParseError(lineno, ex.what());
      }
      any = true;
    }
    if (any) out.push_back(Weights<T>(std::move(vals)));
  }
  return out;
}

template <class T>
void write_distribution_csv(std::ostream& os, const Distribution<T>& d) {
  os << "value,count,probability\n";
  for (const auto& a : d.atoms) {
    if constexpr (std::is_same_v<T, Rational>) {
      os << rat_str(a.value) << ',' << a.count << ','
         << rat_str(Rational(BigInt(a.count), BigInt(1) << d.n)) << '\n';
    } else {
      os << num_str(a.value) << ',' << a.count << ','
         << num_str(std::ldexp(static_cast<double>(a.count), -d.n)) << '\n';
    }
  }
}

}  // namespace radsum

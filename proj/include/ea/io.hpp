#pragma once

#include <string>

#include "ea/trt_types.hpp"

namespace ea {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

// .ea format, line oriented:
//   # comment
//   ea <n>
//   labels <l0> ... <l{n-1}>     (optional)
//   zero <i>
//   unit <j>
//   table
//   <n rows of n entries, decimal index or .>
// Parsing enforces structure only; it never runs axiom validation.
EffectAlgebra parse_ea(const std::string& text);

// Canonical bytes: single spaces, newline-terminated lines, labels always
// present. serialize_ea(parse_ea(t)) == t up to comments and whitespace.
std::string serialize_ea(const EffectAlgebra& e);

// .triple format: `triple`, a sharp block (`sharp <k>`, zero, unit, table),
// a meager block (`meager <m>`, zero, table), then `h` with one line
// "<sharpIndex>: <meagerIndex>..." per sharp element.
Triple parse_triple(const std::string& text);
std::string serialize_triple(const Triple& t);

}  // namespace ea

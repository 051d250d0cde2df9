#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "polyfn/error.hpp"
#include "polyfn/funcspace.hpp"

namespace polyfn::cli {

enum class Format { kText, kJson };

Format parse_format(const std::string& name);

// Malformed header or value tokens.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A value outside [0, q).
class RangeError : public Error {
 public:
  using Error::Error;
};

// The number of values differs from q^m.
class CountError : public Error {
 public:
  using Error::Error;
};

struct InputSpec {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t m = 1;
  std::vector<std::uint64_t> values;

  FuncTable to_table() const;
  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

// Text: a header line "p=<int> n=<int> m=<int>" (m defaults to 1) followed
// by whitespace-separated values in lexicographic argument order.
// JSON: {"p": .., "n": .., "m": .., "values": [..]}.
InputSpec parse_input(std::istream& in, Format format);
InputSpec parse_input(const std::string& text, Format format);

std::string serialize_input(const InputSpec& spec, Format format);

}  // namespace polyfn::cli

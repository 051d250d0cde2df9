#include "cli/input.hpp"

#include <charconv>
#include <iterator>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace polyfn::cli {
namespace {

std::uint64_t parse_uint(const std::string& token, const std::string& where) {
  std::uint64_t v = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(where + ": '" + token + "' is not a non-negative integer");
  }
  return v;
}

std::uint32_t parse_param(const std::string& token, const std::string& where) {
  const std::uint64_t v = parse_uint(token, where);
  if (v > UINT32_MAX) throw ParseError(where + ": '" + token + "' is too large");
  return static_cast<std::uint32_t>(v);
}

// Validates p, n, m and returns q.
std::uint64_t validate_header(const InputSpec& spec) {
  if (spec.m == 0) throw ParseError("header: m must be at least 1");
  try {
    RingCtx ctx(spec.p, spec.n);
    table_size(ctx, spec.m);
    return ctx.q();
  } catch (const InvalidRing& e) {
    throw ParseError(std::string("header: ") + e.what());
  }
}

void validate_count(const InputSpec& spec, std::uint64_t q) {
  std::uint64_t expected = 1;
  for (std::uint32_t i = 0; i < spec.m; ++i) expected *= q;
  if (spec.values.size() != expected) {
    throw CountError("got " + std::to_string(spec.values.size()) + " values, need " +
                     std::to_string(expected) + " (q^m = " + std::to_string(q) + "^" +
                     std::to_string(spec.m) + ")");
  }
}

InputSpec parse_text(std::istream& in) {
  std::string header;
  while (header.find_first_not_of(" \t\r") == std::string::npos) {
    if (!std::getline(in, header)) throw ParseError("empty input: expected header 'p=<int> n=<int> m=<int>'");
  }
  InputSpec spec;
  bool have_p = false, have_n = false;
  std::istringstream hs(header);
  std::string token;
  std::size_t pos = 0;
  while (hs >> token) {
    ++pos;
    const std::string where = "header token " + std::to_string(pos);
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError(where + ": '" + token + "' is not key=value");
    const std::string key = token.substr(0, eq);
    const std::uint32_t v = parse_param(token.substr(eq + 1), where);
    if (key == "p") {
      spec.p = v;
      have_p = true;
    } else if (key == "n") {
      spec.n = v;
      have_n = true;
    } else if (key == "m") {
      spec.m = v;
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
  if (!have_p || !have_n) throw ParseError("header: both p and n are required");

  const std::uint64_t q = validate_header(spec);
  std::size_t index = 0;
  while (in >> token) {
    const std::string where = "value " + std::to_string(index);
    const std::uint64_t v = parse_uint(token, where);
    if (v >= q) {
      throw RangeError(where + ": " + token + " is not below q = " + std::to_string(q));
    }
    spec.values.push_back(v);
    ++index;
  }
  validate_count(spec, q);
  return spec;
}

InputSpec parse_json(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ParseError("empty input");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  InputSpec spec;
  auto field = [&](const char* key, bool required) -> std::optional<std::uint32_t> {
    if (!doc.contains(key)) {
      if (required) throw ParseError(std::string("json: missing field '") + key + "'");
      return std::nullopt;
    }
    const auto& v = doc[key];
    if (!v.is_number_unsigned()) throw ParseError(std::string("json: field '") + key + "' must be a non-negative integer");
    return v.get<std::uint32_t>();
  };
  if (!doc.is_object()) throw ParseError("json: top level must be an object");
  spec.p = *field("p", true);
  spec.n = *field("n", true);
  spec.m = field("m", false).value_or(1);
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw ParseError("json: missing array field 'values'");
  }
  const std::uint64_t q = validate_header(spec);
  std::size_t index = 0;
  for (const auto& v : doc["values"]) {
    const std::string where = "values[" + std::to_string(index) + "]";
    if (!v.is_number_unsigned()) {
      throw ParseError(where + ": " + v.dump() + " is not a non-negative integer");
    }
    const auto x = v.get<std::uint64_t>();
    if (x >= q) throw RangeError(where + ": " + std::to_string(x) + " is not below q = " + std::to_string(q));
    spec.values.push_back(x);
    ++index;
  }
  validate_count(spec, q);
  return spec;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  throw ParseError("unknown format '" + name + "' (expected text or json)");
}

FuncTable InputSpec::to_table() const {
  RingCtx ctx(p, n);
  std::vector<Residue> v(values.begin(), values.end());
  return FuncTable(ctx, m, std::move(v));
}

InputSpec parse_input(std::istream& in, Format format) {
  return format == Format::kText ? parse_text(in) : parse_json(in);
}

InputSpec parse_input(const std::string& text, Format format) {
  std::istringstream in(text);
  return parse_input(in, format);
}

std::string serialize_input(const InputSpec& spec, Format format) {
  if (format == Format::kJson) {
    nlohmann::ordered_json doc;
    doc["p"] = spec.p;
    doc["n"] = spec.n;
    doc["m"] = spec.m;
    doc["values"] = spec.values;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "p=" << spec.p << " n=" << spec.n << " m=" << spec.m << "\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    out << spec.values[i] << (i + 1 == spec.values.size() ? "\n" : " ");
  }
  return out.str();
}

}  // namespace polyfn::cli

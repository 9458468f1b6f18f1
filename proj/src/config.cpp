#include "weilstar/config.hpp"

#include <cmath>
#include <sstream>

namespace weilstar {

namespace {

nlohmann::json field_to_json(const FieldSpec& f) {
  return {{"p", f.p}, {"e", f.e}, {"modulus", f.modulus}};
}

FieldSpec field_from_json(const nlohmann::json& j) {
  FieldSpec f;
  f.p = j.at("p").get<std::uint32_t>();
  f.e = j.value("e", 1u);
  f.modulus = j.value("modulus", std::vector<std::uint32_t>{});
  return f;
}

}  // namespace

const char* involution_name(Involution inv) { return inv == Involution::NegateX ? "negate-x" : "identity"; }

Involution parse_involution(const std::string& s) {
  if (s == "negate-x" || s == "negate_x") return Involution::NegateX;
  if (s == "identity") return Involution::Identity;
  throw ConfigError("unknown involution '" + s + "' (expected negate-x or identity)");
}

const char* output_format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
  }
  return "?";
}

OutputFormat parse_output_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw ConfigError("unknown output format '" + s + "' (expected json, csv or text)");
}

nlohmann::json ring_spec_to_json(const RingSpec& spec) {
  return std::visit(
      [](const auto& s) -> nlohmann::json {
        using T = std::decay_t<decltype(s)>;
        nlohmann::json j = field_to_json(s.field);
        if constexpr (std::is_same_v<T, TruncatedPolySpec>) {
          j["variant"] = "truncated";
          j["m"] = s.m;
          j["involution"] = involution_name(s.involution);
        } else if constexpr (std::is_same_v<T, MatrixRingSpec>) {
          j["variant"] = "matrix";
          j["n"] = s.n;
        } else {
          j["variant"] = "doubling";
          j["r"] = s.r;
        }
        return j;
      },
      spec);
}

RingSpec ring_spec_from_json(const nlohmann::json& j) {
  try {
    const auto variant = j.at("variant").get<std::string>();
    const FieldSpec field = field_from_json(j);
    if (variant == "truncated") {
      return TruncatedPolySpec{field, j.at("m").get<std::uint32_t>(),
                               parse_involution(j.value("involution", std::string("negate-x")))};
    }
    if (variant == "matrix") return MatrixRingSpec{field, j.at("n").get<std::uint32_t>()};
    if (variant == "doubling") return DoublingSpec{field, j.at("r").get<std::uint32_t>()};
    throw ConfigError("unknown ring variant '" + variant + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed ring spec: ") + e.what());
  }
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j{{"ring", ring_spec_to_json(c.ring)},
                   {"seed", c.seed},
                   {"samples", c.samples},
                   {"tolerance", c.tolerance},
                   {"output", output_format_name(c.output)}};
  if (c.cache_dir) j["cache_dir"] = c.cache_dir->string();
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.ring = ring_spec_from_json(j.at("ring"));
    c.seed = j.value("seed", std::uint64_t{0});
    c.samples = j.value("samples", c.samples);
    c.tolerance = j.value("tolerance", c.tolerance);
    c.output = parse_output_format(j.value("output", std::string("json")));
    if (j.contains("cache_dir")) c.cache_dir = j.at("cache_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) throw ConfigError("tolerance must be positive");
  const FieldSpec& f = field_spec(c.ring);
  if (f.p % 2 == 0) throw ConfigError("the field must have odd characteristic");
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TruncatedPolySpec>) {
          if (s.m == 0) throw ConfigError("m must be positive");
        } else if constexpr (std::is_same_v<T, MatrixRingSpec>) {
          if (s.n == 0) throw ConfigError("n must be positive");
        } else {
          if (s.r == 0) throw ConfigError("r must be positive");
        }
      },
      c.ring);
}

RingElement parse_element(const Ring& ring, const std::string& literal) {
  std::vector<std::int64_t> entries;
  std::stringstream ss(literal);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      entries.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("malformed ring-element literal '" + literal + "'");
    }
  }
  if (entries.size() != ring.payload_size()) {
    throw ConfigError("ring-element literal '" + literal + "' needs " + std::to_string(ring.payload_size()) +
                      " entries");
  }
  try {
    return ring.from_ints(entries);
  } catch (const std::exception& e) {
    throw ConfigError("invalid ring-element literal '" + literal + "': " + e.what());
  }
}

StarMatrix parse_matrix(const Ring& ring, const std::string& a, const std::string& b, const std::string& c,
                        const std::string& d) {
  return {parse_element(ring, a), parse_element(ring, b), parse_element(ring, c), parse_element(ring, d)};
}

nlohmann::json to_json(Scalar z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},
          {"status", c.passed() ? "pass" : "fail"},
          {"checked", c.checked},
          {"failures", c.failures},
          {"max_deviation", c.max_deviation},
          {"witnesses", c.witnesses}};
}

nlohmann::json to_json(const std::vector<Check>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

nlohmann::json word_to_json(const StarGroup& group, const Word& word) { return group.to_string(word); }

nlohmann::json matrix_to_json(const OperatorMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace weilstar

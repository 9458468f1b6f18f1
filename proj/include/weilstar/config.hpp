#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "weilstar/bundle.hpp"
#include "weilstar/ring.hpp"
#include "weilstar/star_group.hpp"

namespace weilstar {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  RingSpec ring = TruncatedPolySpec{};
  std::uint64_t seed = 0;
  std::size_t samples = 200;
  double tolerance = 1e-8;
  OutputFormat output = OutputFormat::Json;
  std::optional<std::filesystem::path> cache_dir;
};

// Throws ConfigError on invalid values (tolerance <= 0, malformed ring spec).
void validate(const RunConfig& config);

nlohmann::json ring_spec_to_json(const RingSpec& spec);
RingSpec ring_spec_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

const char* output_format_name(OutputFormat f);
OutputFormat parse_output_format(const std::string& s);
Involution parse_involution(const std::string& s);
const char* involution_name(Involution inv);

// Ring-element literal: comma-separated payload entries, e.g. "1,0,2" for
// 1 + 2x^2 in A_3, or the n*n row-major entries of a matrix.
RingElement parse_element(const Ring& ring, const std::string& literal);
StarMatrix parse_matrix(const Ring& ring, const std::string& a, const std::string& b, const std::string& c,
                        const std::string& d);

nlohmann::json to_json(const Check& check);
nlohmann::json to_json(const std::vector<Check>& checks);
nlohmann::json to_json(Scalar z);
nlohmann::json word_to_json(const StarGroup& group, const Word& word);
nlohmann::json matrix_to_json(const OperatorMatrix& m);

}  // namespace weilstar

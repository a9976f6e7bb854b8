#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kahlerq/errors.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq::cli {

using json = nlohmann::json;

// Reject unknown keys so config typos fail loudly instead of silently using
// defaults.  `where` names the object in error messages ("params", ...).
void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed);

const json& require_field(const json& obj, const std::string& where, const char* key);

double get_num(const json& obj, const std::string& where, const char* key,
               std::optional<double> fallback = std::nullopt);
std::int64_t get_int(const json& obj, const std::string& where, const char* key,
                     std::optional<std::int64_t> fallback = std::nullopt);
std::string get_str(const json& obj, const std::string& where, const char* key,
                    std::optional<std::string> fallback = std::nullopt);
bool get_bool(const json& obj, const std::string& where, const char* key,
              std::optional<bool> fallback = std::nullopt);

// Positive / bounded variants; throw ConfigError naming the offending field.
std::int64_t get_positive_int(const json& obj, const std::string& where, const char* key,
                              std::optional<std::int64_t> fallback = std::nullopt);

Vec get_vec(const json& obj, const std::string& where, const char* key);
Mat get_mat(const json& obj, const std::string& where, const char* key);

json vec_to_json(const Vec& v);

}  // namespace kahlerq::cli

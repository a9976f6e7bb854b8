#include "json_util.hpp"

#include <algorithm>

namespace kahlerq::cli {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(where + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) {
      throw ConfigError("unknown field '" + key + "' in " + where);
    }
  }
}

const json& require_field(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing required field '" + std::string(key) + "' in " + where);
  }
  return *it;
}

double get_num(const json& obj, const std::string& where, const char* key,
               std::optional<double> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required field '" + std::string(key) + "' in " + where);
  }
  if (!it->is_number()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a number");
  }
  return it->get<double>();
}

std::int64_t get_int(const json& obj, const std::string& where, const char* key,
                     std::optional<std::int64_t> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required field '" + std::string(key) + "' in " + where);
  }
  if (!it->is_number_integer()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be an integer");
  }
  return it->get<std::int64_t>();
}

std::string get_str(const json& obj, const std::string& where, const char* key,
                    std::optional<std::string> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required field '" + std::string(key) + "' in " + where);
  }
  if (!it->is_string()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a string");
  }
  return it->get<std::string>();
}

bool get_bool(const json& obj, const std::string& where, const char* key,
              std::optional<bool> fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing required field '" + std::string(key) + "' in " + where);
  }
  if (!it->is_boolean()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a boolean");
  }
  return it->get<bool>();
}

std::int64_t get_positive_int(const json& obj, const std::string& where, const char* key,
                              std::optional<std::int64_t> fallback) {
  const std::int64_t v = get_int(obj, where, key, fallback);
  if (v < 1) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be >= 1 (got " +
                      std::to_string(v) + ")");
  }
  return v;
}

Vec get_vec(const json& obj, const std::string& where, const char* key) {
  const json& arr = require_field(obj, where, key);
  if (!arr.is_array() || arr.empty()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where +
                      " must be a non-empty array of numbers");
  }
  Vec v(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ConfigError("field '" + std::string(key) + "' in " + where +
                        " must contain only numbers");
    }
    v(static_cast<Index>(i)) = arr[i].get<double>();
  }
  return v;
}

Mat get_mat(const json& obj, const std::string& where, const char* key) {
  const json& rows = require_field(obj, where, key);
  if (!rows.is_array() || rows.empty()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where +
                      " must be a non-empty array of rows");
  }
  const std::size_t n_rows = rows.size();
  std::size_t n_cols = 0;
  Mat m;
  for (std::size_t i = 0; i < n_rows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.empty()) {
      throw ConfigError("field '" + std::string(key) + "' in " + where +
                        " must contain array rows");
    }
    if (i == 0) {
      n_cols = row.size();
      m.resize(static_cast<Index>(n_rows), static_cast<Index>(n_cols));
    } else if (row.size() != n_cols) {
      throw ConfigError("field '" + std::string(key) + "' in " + where + " has ragged rows");
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (!row[j].is_number()) {
        throw ConfigError("field '" + std::string(key) + "' in " + where +
                          " must contain only numbers");
      }
      m(static_cast<Index>(i), static_cast<Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

}  // namespace kahlerq::cli

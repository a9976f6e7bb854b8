#pragma once

#include <string>

namespace kahlerq::cli {

// Human-readable JSON schema for experiment configs, printed by `kahlerq schema`.
std::string schema_text();

}  // namespace kahlerq::cli

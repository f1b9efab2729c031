#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lidonor/materials.hpp"
#include "lidonor/operating.hpp"
#include "lidonor/quadrature.hpp"

#include "json.hpp"

namespace lidonor {

// Everything echoed into the reproducibility header of each output.
struct OutputMeta {
    std::string subcommand;
    Overrides overrides;
    QuadSettings quad;
    std::vector<std::pair<std::string, std::string>> params;
};

inline constexpr const char* kToolVersion = "1.0.0";

// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);

std::string table_to_csv(const Table& t, const OutputMeta& meta,
                         const MaterialParams& p);
nlohmann::json table_to_json(const Table& t, const OutputMeta& meta,
                             const MaterialParams& p);

// Writes to the file, or to stdout when path is empty; the parent
// directory must already exist.
void write_text(const std::string& path, const std::string& text);

}  // namespace lidonor

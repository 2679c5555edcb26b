#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qgspec/fusion/fusion_ring.hpp"

namespace qgspec::fusion {

// Ring descriptor documents, see docs/ring_format.md. Unknown fields are
// rejected with parse_error.
RingDescriptor parse_descriptor(const nlohmann::json& doc);
RingDescriptor parse_descriptor_file(const std::filesystem::path& path);
nlohmann::json to_json(const RingDescriptor& desc);

}  // namespace qgspec::fusion

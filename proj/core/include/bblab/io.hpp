#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "bblab/bodies.hpp"
#include "bblab/grid_function.hpp"
#include "bblab/stability.hpp"
#include "bblab/voxel_set.hpp"

namespace bblab {

// JSON documents. Numbers are written with 17 significant digits so every
// double survives a round trip bit for bit. Parsing failures raise FormatError;
// well-formed documents with invalid contents raise DomainError.

std::string to_json(const GridFunction& f);
GridFunction grid_from_json(std::string_view text);

/// Voxel document; n_split is written when present (split bodies).
std::string to_json(const VoxelSet& v, std::optional<std::size_t> n_split = std::nullopt);
std::string to_json(const LiftedBody& body);

struct VoxelDocument {
  VoxelSet voxels;
  std::optional<std::size_t> n_split;
};

VoxelDocument voxels_from_json(std::string_view text);

std::string to_json(const StabilityReport& r);
StabilityReport report_from_json(std::string_view text);

/// Whole-file helpers; FileError when the file cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace bblab

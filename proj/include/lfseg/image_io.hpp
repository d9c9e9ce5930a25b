#pragma once

#include <filesystem>

#include "lfseg/field.hpp"

namespace lfseg {

// Reads an 8-bit grayscale image (PGM P5/P2 or grayscale PNG) as intensities
// in [0, 255]. Throws IoError with path and reason on failure.
ScalarField2D load_image(const std::filesystem::path& path);

// Writes a binary PGM (P5). Values are clamped to [0, 255] and rounded.
void save_image(const ScalarField2D& field, const std::filesystem::path& path);

// Mask writer: 0 -> 0, 1 -> 255, PGM P5.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace lfseg

#pragma once

#include <string>

#include "spectral_field.hpp"

namespace zkd {

enum class FieldFormat { kBinary, kJson };

// Binary: "ZKDF", u32 version, u32 nx, u32 ny, u32 tag length + tag bytes,
// then nx*ny (re, im) float64 pairs, all little-endian, m-major FFT order.
// JSON: {"nx", "ny", "normalization", "coeffs": [[re, im], ...]}.
// Both carry the normalization tag; loading rejects anything else.
void SaveField(const std::string& path, const SpectralField& field, FieldFormat format);

// Detects the format from the first bytes. Throws kIo on unreadable files and
// kParse on malformed content.
SpectralField LoadField(const std::string& path);

inline constexpr const char* kNormalizationTag = "angular-2pi-inverse";

}  // namespace zkd

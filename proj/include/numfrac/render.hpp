#pragma once

#include <cstdint>
#include <vector>

#include "numfrac/gridgen.hpp"
#include "numfrac/types.hpp"

namespace numfrac {

enum class ImageFormat { pbm_ascii, pbm_binary, pgm_ascii, pgm_binary, ppm_binary };

const char* to_string(ImageFormat f) noexcept;

// Cell value -> pixel mapping for table rendering.
struct Palette {
    enum class Kind { grayscale_linear, value_modulo };
    Kind kind = Kind::grayscale_linear;
    std::uint64_t modulo = 2; // used by value_modulo

    static Palette grayscale() { return {Kind::grayscale_linear, 0}; }
    static Palette value_modulo(std::uint64_t m) { return {Kind::value_modulo, m}; }
};

struct ImageSpec {
    ImageFormat format = ImageFormat::pbm_binary;
    std::uint32_t cell_pixels = 1;
    Palette palette = Palette::grayscale();
    // Row a=0 is rendered at the top by default, matching table orientation;
    // set to flip into the conventional mathematical orientation.
    bool flip_vertical = false;
};

// Set cell -> black block, clear cell -> white. PBM formats only
// (FormatMismatch otherwise). Output is deterministic byte for byte.
std::vector<std::uint8_t> render_indicator(const IndicatorGrid& grid, const ImageSpec& spec);

// Value table as a graymap or pixmap (FormatMismatch for PBM formats).
std::vector<std::uint8_t> render_table(const ValueTable& table, const ImageSpec& spec);

} // namespace numfrac

#include <algorithm>
#include <string>

#include "numfrac/render.hpp"

namespace numfrac {

const char* to_string(ImageFormat f) noexcept {
    switch (f) {
    case ImageFormat::pbm_ascii: return "P1";
    case ImageFormat::pbm_binary: return "P4";
    case ImageFormat::pgm_ascii: return "P2";
    case ImageFormat::pgm_binary: return "P5";
    case ImageFormat::ppm_binary: return "P6";
    }
    return "?";
}

namespace {

void append_text(std::vector<std::uint8_t>& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

void append_header(std::vector<std::uint8_t>& out, const char* magic, std::uint64_t width,
                   std::uint64_t height) {
    append_text(out, std::string(magic) + "\n" + std::to_string(width) + " " +
                         std::to_string(height) + "\n");
}

// 16-entry pixmap palette for value_modulo rendering; entry 0 is white so the
// zero pattern reads as background.
constexpr std::uint8_t kPalette[16][3] = {
    {255, 255, 255}, {230, 25, 75},  {60, 180, 75},   {255, 225, 25},
    {0, 130, 200},   {245, 130, 48}, {145, 30, 180},  {70, 240, 240},
    {240, 50, 230},  {210, 245, 60}, {250, 190, 190}, {0, 128, 128},
    {230, 190, 255}, {170, 110, 40}, {128, 0, 0},     {170, 255, 195}};

std::uint64_t row_source(std::uint64_t y, std::uint64_t side, bool flip) {
    return flip ? side - 1 - y : y;
}

} // namespace

std::vector<std::uint8_t> render_indicator(const IndicatorGrid& grid, const ImageSpec& spec) {
    if (spec.format != ImageFormat::pbm_ascii && spec.format != ImageFormat::pbm_binary)
        throw FormatMismatch("indicator rendering needs a PBM format");
    if (spec.cell_pixels < 1) throw Error("cell_pixels must be at least 1");

    const std::uint64_t side = grid.side();
    const std::uint64_t dim = side * spec.cell_pixels;
    std::vector<std::uint8_t> out;
    append_header(out, to_string(spec.format), dim, dim);

    if (spec.format == ImageFormat::pbm_ascii) {
        std::string row_text;
        for (std::uint64_t y = 0; y < dim; ++y) {
            const std::uint64_t a = row_source(y / spec.cell_pixels, side, spec.flip_vertical);
            row_text.clear();
            for (std::uint64_t x = 0; x < dim; ++x) {
                if (x > 0) row_text += ' ';
                row_text += grid.bit(a, x / spec.cell_pixels) ? '1' : '0';
            }
            row_text += '\n';
            append_text(out, row_text);
        }
        return out;
    }

    // P4: bits packed MSB-first, rows padded to whole bytes.
    const std::uint64_t row_bytes = (dim + 7) / 8;
    std::vector<std::uint8_t> row(row_bytes);
    for (std::uint64_t y = 0; y < dim; ++y) {
        const std::uint64_t a = row_source(y / spec.cell_pixels, side, spec.flip_vertical);
        std::fill(row.begin(), row.end(), 0);
        for (std::uint64_t x = 0; x < dim; ++x)
            if (grid.bit(a, x / spec.cell_pixels))
                row[x >> 3] |= static_cast<std::uint8_t>(0x80u >> (x & 7));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<std::uint8_t> render_table(const ValueTable& table, const ImageSpec& spec) {
    if (spec.format == ImageFormat::pbm_ascii || spec.format == ImageFormat::pbm_binary)
        throw FormatMismatch("table rendering needs a PGM or PPM format");
    if (spec.cell_pixels < 1) throw Error("cell_pixels must be at least 1");
    if (spec.palette.kind == Palette::Kind::value_modulo && spec.palette.modulo < 1)
        throw Error("value_modulo needs a positive modulus");

    const std::uint64_t side = table.side();
    const std::uint64_t dim = side * spec.cell_pixels;

    // Resolve every cell to a sample value and the header maxval.
    std::uint64_t max_value = 1;
    if (spec.palette.kind == Palette::Kind::grayscale_linear) {
        for (std::uint64_t a = 0; a < side; ++a)
            for (std::uint32_t v : table.row(a)) max_value = std::max<std::uint64_t>(max_value, v);
    }
    const auto sample = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
        const std::uint64_t v = table.cell(a, b);
        if (spec.palette.kind == Palette::Kind::grayscale_linear)
            return (2 * 255 * v + max_value) / (2 * max_value); // round half up
        return v % spec.palette.modulo;
    };
    const std::uint64_t maxval = spec.palette.kind == Palette::Kind::grayscale_linear
                                     ? 255
                                     : std::max<std::uint64_t>(spec.palette.modulo - 1, 1);
    if (spec.format == ImageFormat::pgm_binary && maxval > 255)
        throw FormatMismatch("single-byte graymap cannot hold maxval " + std::to_string(maxval));

    std::vector<std::uint8_t> out;
    append_header(out, to_string(spec.format), dim, dim);
    append_text(out, std::to_string(spec.format == ImageFormat::ppm_binary ? 255 : maxval) + "\n");

    for (std::uint64_t y = 0; y < dim; ++y) {
        const std::uint64_t a = row_source(y / spec.cell_pixels, side, spec.flip_vertical);
        if (spec.format == ImageFormat::pgm_ascii) {
            std::string row_text;
            for (std::uint64_t x = 0; x < dim; ++x) {
                if (x > 0) row_text += ' ';
                row_text += std::to_string(sample(a, x / spec.cell_pixels));
            }
            row_text += '\n';
            append_text(out, row_text);
        } else if (spec.format == ImageFormat::pgm_binary) {
            for (std::uint64_t x = 0; x < dim; ++x)
                out.push_back(static_cast<std::uint8_t>(sample(a, x / spec.cell_pixels)));
        } else { // ppm_binary
            for (std::uint64_t x = 0; x < dim; ++x) {
                const std::uint64_t s = sample(a, x / spec.cell_pixels);
                if (spec.palette.kind == Palette::Kind::grayscale_linear) {
                    const auto g = static_cast<std::uint8_t>(s);
                    out.push_back(g);
                    out.push_back(g);
                    out.push_back(g);
                } else {
                    const std::uint8_t* rgb = kPalette[s % 16];
                    out.push_back(rgb[0]);
                    out.push_back(rgb[1]);
                    out.push_back(rgb[2]);
                }
            }
        }
    }
    return out;
}

} // namespace numfrac

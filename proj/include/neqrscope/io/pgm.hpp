#ifndef NEQRSCOPE_IO_PGM_HPP
#define NEQRSCOPE_IO_PGM_HPP

#include <cctype>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "neqrscope/error.hpp"
#include "neqrscope/image.hpp"

namespace neqrscope::io {

namespace detail {

/// Tokenizer over the PGM header: whitespace separated, '#' starts a comment.
class PgmCursor {
public:
    explicit PgmCursor(std::string_view data) : data_(data) {}

    std::string token() {
        skip_space();
        std::string out;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) && data_[pos_] != '#') {
            out.push_back(data_[pos_++]);
        }
        return out;
    }

    long long integer(const char* what) {
        const auto t = token();
        if (t.empty()) {
            throw FormatError(std::string("pgm: unexpected end of file reading ") + what);
        }
        long long v = 0;
        for (char ch : t) {
            if (!std::isdigit(static_cast<unsigned char>(ch)) || v > 1'000'000'000) {
                throw FormatError(std::string("pgm: bad ") + what + " '" + t + "'");
            }
            v = v * 10 + (ch - '0');
        }
        return v;
    }

    /// Consumes the single whitespace byte that separates a P5 header from the raster.
    void end_header() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw FormatError("pgm: missing whitespace after header");
        }
        ++pos_;
    }

    [[nodiscard]] std::string_view rest() const { return data_.substr(pos_); }

private:
    void skip_space() {
        while (pos_ < data_.size()) {
            if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

inline int exact_log2(long long v) {
    int k = 0;
    while ((1LL << k) < v) {
        ++k;
    }
    return (1LL << k) == v ? k : -1;
}

} // namespace detail

/// Decodes a P2 or P5 graymap whose side is 2^n (n >= 1) and whose maxval is 2^b - 1.
[[nodiscard]] inline ClassicalImage parse_pgm(std::string_view data) {
    detail::PgmCursor cur(data);
    const auto magic = cur.token();
    if (magic != "P2" && magic != "P5") {
        throw FormatError("pgm: unsupported magic '" + magic + "' (expected P2 or P5)");
    }
    const auto width = cur.integer("width");
    const auto height = cur.integer("height");
    const auto maxval = cur.integer("maxval");
    if (width != height) {
        throw FormatError("pgm: image is " + std::to_string(width) + "x" + std::to_string(height) + ", not square");
    }
    const int n = detail::exact_log2(width);
    if (n < 1) {
        throw FormatError("pgm: side " + std::to_string(width) + " is not a power of two >= 2");
    }
    const int b = detail::exact_log2(maxval + 1);
    if (b < 1 || b > 16) {
        throw FormatError("pgm: maxval " + std::to_string(maxval) + " is not of the form 2^b - 1 with 1 <= b <= 16");
    }
    NeqrLayout layout;
    layout.n = n;
    layout.b = b;
    try {
        layout.validate();
    } catch (const Error& e) {
        throw FormatError(std::string("pgm: ") + e.what());
    }

    const auto count = static_cast<std::size_t>(width * height);
    std::vector<int> values;
    values.reserve(count);
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = cur.integer("pixel value");
            if (v > maxval) {
                throw FormatError("pgm: pixel " + std::to_string(i) + " value " + std::to_string(v) + " exceeds maxval");
            }
            values.push_back(static_cast<int>(v));
        }
        if (!cur.token().empty()) {
            throw FormatError("pgm: trailing data after raster");
        }
    } else {
        cur.end_header();
        const auto raster = cur.rest();
        const std::size_t bytes = maxval < 256 ? 1 : 2;
        if (raster.size() != count * bytes) {
            throw FormatError("pgm: raster has " + std::to_string(raster.size()) + " bytes, expected " +
                              std::to_string(count * bytes));
        }
        for (std::size_t i = 0; i < count; ++i) {
            int v = static_cast<unsigned char>(raster[i * bytes]);
            if (bytes == 2) {
                v = (v << 8) | static_cast<unsigned char>(raster[i * bytes + 1]);
            }
            if (v > maxval) {
                throw FormatError("pgm: pixel " + std::to_string(i) + " value " + std::to_string(v) + " exceeds maxval");
            }
            values.push_back(v);
        }
    }
    return ClassicalImage(layout, std::move(values));
}

[[nodiscard]] inline ClassicalImage read_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open image '" + path + "'");
    }
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_pgm(data);
}

/// Encodes `image` as P2 (text) or P5 (binary).
[[nodiscard]] inline std::string format_pgm(const ClassicalImage& image, bool binary = false) {
    const int side = image.layout.side();
    const int maxval = image.layout.max_value();
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << "\n" << side << " " << side << "\n" << maxval << "\n";
    for (int row = 0; row < side; ++row) {
        for (int col = 0; col < side; ++col) {
            const int v = image.at(row, col);
            if (binary) {
                if (maxval >= 256) {
                    out.put(static_cast<char>((v >> 8) & 0xff));
                }
                out.put(static_cast<char>(v & 0xff));
            } else {
                out << v << (col + 1 == side ? "\n" : " ");
            }
        }
    }
    return out.str();
}

} // namespace neqrscope::io

#endif

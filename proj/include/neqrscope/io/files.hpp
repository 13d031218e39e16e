#ifndef NEQRSCOPE_IO_FILES_HPP
#define NEQRSCOPE_IO_FILES_HPP

#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include "neqrscope/error.hpp"

namespace neqrscope::io {

[[nodiscard]] inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "': file not found or unreadable");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw FormatError("write to '" + path + "' failed");
    }
}

} // namespace neqrscope::io

#endif

#include "cubelsh/binary_io.hpp"

#include <array>
#include <istream>
#include <ostream>

#include "cubelsh/errors.hpp"

namespace cubelsh::io {

void write_bytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void write_u32(std::ostream& out, std::uint32_t value) {
    std::array<std::uint8_t, 4> bytes;
    for (int i = 0; i < 4; ++i) bytes[i] = std::uint8_t(value >> (8 * i));
    write_bytes(out, bytes.data(), bytes.size());
}

void write_u64(std::ostream& out, std::uint64_t value) {
    std::array<std::uint8_t, 8> bytes;
    for (int i = 0; i < 8; ++i) bytes[i] = std::uint8_t(value >> (8 * i));
    write_bytes(out, bytes.data(), bytes.size());
}

void write_f64(std::ostream& out, double value) {
    write_u64(out, std::bit_cast<std::uint64_t>(value));
}

void read_bytes(std::istream& in, void* data, std::size_t size, const std::string& section) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw FormatError(section, "truncated: expected " + std::to_string(size) +
                                       " more bytes, got " + std::to_string(in.gcount()));
    }
}

std::uint32_t read_u32(std::istream& in, const std::string& section) {
    std::array<std::uint8_t, 4> bytes;
    read_bytes(in, bytes.data(), bytes.size(), section);
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) value |= std::uint32_t(bytes[i]) << (8 * i);
    return value;
}

std::uint64_t read_u64(std::istream& in, const std::string& section) {
    std::array<std::uint8_t, 8> bytes;
    read_bytes(in, bytes.data(), bytes.size(), section);
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) value |= std::uint64_t(bytes[i]) << (8 * i);
    return value;
}

double read_f64(std::istream& in, const std::string& section) {
    return std::bit_cast<double>(read_u64(in, section));
}

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t n = 0; n < 256; ++n) {
        std::uint32_t c = n;
        for (int k = 0; k < 8; ++k) {
            c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        }
        table[n] = c;
    }
    return table;
}

} // namespace

std::uint32_t crc32(const std::uint8_t* data, std::size_t size) {
    static const std::array<std::uint32_t, 256> table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < size; ++i) {
        c = table[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
    }
    return c ^ 0xFFFFFFFFu;
}

std::uint32_t crc32(const std::vector<std::uint8_t>& data) {
    return crc32(data.data(), data.size());
}

} // namespace cubelsh::io

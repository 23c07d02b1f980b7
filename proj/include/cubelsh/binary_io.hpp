#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <iosfwd>
#include <string>
#include <vector>

namespace cubelsh::io {

// All on-disk integers are little-endian regardless of host byte order, and
// doubles travel as the little-endian bytes of their IEEE-754 bit pattern.

void write_bytes(std::ostream& out, const void* data, std::size_t size);
void write_u32(std::ostream& out, std::uint32_t value);
void write_u64(std::ostream& out, std::uint64_t value);
void write_f64(std::ostream& out, double value);

/// Readers throw FormatError naming `section` when input ends early.
void read_bytes(std::istream& in, void* data, std::size_t size, const std::string& section);
std::uint32_t read_u32(std::istream& in, const std::string& section);
std::uint64_t read_u64(std::istream& in, const std::string& section);
double read_f64(std::istream& in, const std::string& section);

/// CRC-32 (polynomial 0xEDB88320, the zlib/PNG convention).
std::uint32_t crc32(const std::uint8_t* data, std::size_t size);
std::uint32_t crc32(const std::vector<std::uint8_t>& data);

} // namespace cubelsh::io

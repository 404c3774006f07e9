#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "satotate/arith.hpp"
#include "satotate/ec.hpp"
#include "satotate/report.hpp"
#include "satotate/tau.hpp"

namespace satotate {

// Binary caches. Header (25 bytes, little-endian):
//   "ASTC" | u32 version | u8 kind | u64 limit | u64 FNV-1a-64 of the payload
enum class CacheKind : std::uint8_t { ExactTau = 1, Normalized = 2, Angles = 3, Traces = 4 };

inline constexpr std::uint32_t kCacheVersion = 1;

struct CacheHeader {
    CacheKind kind;
    std::uint32_t version;
    std::uint64_t limit;
    std::uint64_t checksum;
};

std::uint64_t fnv1a64(const std::string& bytes);

// Signed integer as minimal little-endian two's-complement bytes (zero -> 0x00).
std::string encode_twos_complement(const mpz_class& v);
mpz_class decode_twos_complement(const std::string& bytes);

void save_cache(const std::filesystem::path& path, const ExactTauTable& table);
void save_cache(const std::filesystem::path& path, const NormalizedSequence& seq);
void save_cache(const std::filesystem::path& path, const AngleSeries& angles);
void save_cache(const std::filesystem::path& path, const TraceSeries& series);

/// FormatError on bad magic/version/kind; ChecksumError on truncation or corruption.
CacheHeader read_cache_header(const std::filesystem::path& path);
ExactTauTable load_exact_tau(const std::filesystem::path& path);
NormalizedSequence load_normalized(const std::filesystem::path& path);
AngleSeries load_angles(const std::filesystem::path& path);
TraceSeries load_traces(const std::filesystem::path& path);

// Reports.
std::string report_to_json(const VerificationReport& report, bool include_runtime = false, int indent = 2);
VerificationReport report_from_json(const std::string& text);
/// Long format: table,row,column,value (value in shortest round-trip form).
std::string report_to_csv(const VerificationReport& report);

}  // namespace satotate

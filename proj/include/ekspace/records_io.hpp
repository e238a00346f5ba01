#pragma once

// Tab-separated record files, one per |r|: <prefix>.r<|r|>.tsv.
//
// Line 1 is "# ekspace-records v1" followed by the run configuration, line 2
// the column names, then one row per record sorted by record_less. Decimal
// fields carry decimal_digits(prec_bits) significant digits; fields of a
// record without Kreck-Stolz values are "NA".

#include <filesystem>
#include <string>
#include <vector>

#include "ekspace/record.hpp"

namespace ekspace {

inline constexpr const char* kRecordsMagic = "# ekspace-records v1";

const std::vector<std::string>& record_columns();

/// Writes one file per |r| present and returns their paths in ascending |r|.
/// `config` is appended to the header line verbatim. Throws kIo, or
/// kSerializationPrecisionLoss when a decimal fails to parse back to the same
/// binary value.
std::vector<std::filesystem::path> write_records(std::vector<SpaceRecord> records, const std::string& prefix,
                                                 const std::string& config);

/// Formats one row (no trailing newline).
std::string format_record(const SpaceRecord& r);

/// Parses one row; throws kFormatError describing the first bad field.
SpaceRecord parse_record(const std::string& line);

/// Reads files written by write_records, in the given order. Errors name the
/// file and line: kIo, kFormatError.
std::vector<SpaceRecord> read_records(const std::vector<std::filesystem::path>& paths);

/// The configuration text from a file's header line.
std::string read_config(const std::filesystem::path& path);

/// Shards matching <prefix>.r*.tsv, ascending |r|.
std::vector<std::filesystem::path> find_shards(const std::string& prefix);

}  // namespace ekspace

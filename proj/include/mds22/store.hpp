#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "mds22/code.hpp"

namespace mds22 {

/// Fixed 30-byte little-endian header at the start of every shard file:
///
///   0  magic "MA22"        4 bytes
///   4  version (= 1)       1
///   5  field descriptor    4  (00 p p p: prime p as LE-24; 01 m 00 00: GF(2^m))
///   9  construction        1  (0 custom, 1 C1, 2 C2)
///  10  k                   2
///  12  node index          2  (1-based)
///  14  stripe count        8
///  22  payload length      8  (original file size, same in every shard)
///
/// The body follows: one (top, bottom) byte pair per stripe.
struct ShardHeader {
  static constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'A', '2', '2'};
  static constexpr std::uint8_t kVersion = 1;
  static constexpr std::size_t kSize = 30;

  std::uint8_t version = kVersion;
  FieldKind field_kind = FieldKind::binary;
  std::uint32_t field_param = 8;  // p for prime fields, m for GF(2^m)
  Construction construction = Construction::custom;
  std::uint16_t k = 0;
  std::uint16_t node_index = 0;
  std::uint64_t stripe_count = 0;
  std::uint64_t payload_length = 0;

  std::array<std::uint8_t, kSize> serialize() const;
  /// Throws HeaderMismatch on a malformed or inconsistent header.
  static ShardHeader parse(std::span<const std::uint8_t> bytes);
  /// Equal in everything except the node index.
  bool same_file_as(const ShardHeader& other) const noexcept;

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t node);
ShardHeader read_shard_header(const std::filesystem::path& file);
/// Rebuilds the C1/C2 code a header names (GF(2^8) data path).
CodeSpec code_from_header(const ShardHeader& header);

struct EncodeSummary {
  ShardHeader header;  // node_index = 0
  std::vector<std::filesystem::path> shards;
};

/// Splits `input` into stripes of 2k bytes (zero-padded) and writes
/// shard_<i>.mds for every node i. The code must be over GF(2^8) with the
/// default modulus.
EncodeSummary encode_file(const std::filesystem::path& input, const CodeSpec& code,
                          const std::filesystem::path& out_dir);

struct DecodeSummary {
  std::uint64_t bytes = 0;
  std::vector<std::size_t> missing;
};

/// Rebuilds the original file from any k consistent shards. `code` is only
/// needed for custom codes.
DecodeSummary decode_file(const std::filesystem::path& shard_dir, const std::filesystem::path& out_path,
                          const std::optional<CodeSpec>& code = std::nullopt);

struct HelperTransfer {
  std::size_t node = 0;
  std::uint64_t symbols_sent = 0;
  std::uint64_t symbols_read = 0;
  std::vector<std::size_t> read_positions;  // symbol slots read per stripe
};

struct TransferReport {
  std::size_t failed = 0;
  std::vector<HelperTransfer> helpers;  // contacted helpers only
  std::uint64_t total_sent = 0;
  std::uint64_t total_read = 0;
  std::uint64_t stripes = 0;
};

nlohmann::json to_json(const TransferReport& report);

struct RepairOptions {
  std::optional<Mat> matrix;      // default: the code's designed M_i
  std::optional<CodeSpec> code;   // default: rebuilt from the shard headers
};

/// Rebuilds shard_<failed>.mds from the helper shards and reports what each
/// helper read and sent.
TransferReport repair_shard(const std::filesystem::path& shard_dir, std::size_t failed,
                            const RepairOptions& options = {});

}  // namespace mds22

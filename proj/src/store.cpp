#include "mds22/store.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <string>

#include "mds22/constructions.hpp"
#include "mds22/error.hpp"
#include "mds22/repair.hpp"

namespace mds22 {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kBatchStripes = 8192;

template <typename T>
void put_le(std::uint8_t* dst, T value, std::size_t bytes) {
  for (std::size_t i = 0; i < bytes; ++i) dst[i] = static_cast<std::uint8_t>(value >> (8 * i));
}

std::uint64_t get_le(const std::uint8_t* src, std::size_t bytes) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bytes; ++i) v |= std::uint64_t{src[i]} << (8 * i);
  return v;
}

void require_byte_field(const Field& f) {
  if (f.kind() != FieldKind::binary || f.degree() != 8 || !f.is_default_modulus())
    throw Error(Errc::field_mismatch, "shard data path needs gf:2^8, got " + f.describe());
}

std::optional<std::size_t> shard_index_of(const fs::path& file) {
  const std::string name = file.filename().string();
  constexpr std::string_view prefix = "shard_", suffix = ".mds";
  if (name.size() <= prefix.size() + suffix.size() || !name.starts_with(prefix) || !name.ends_with(suffix))
    return std::nullopt;
  const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - suffix.size());
  if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) || digits.size() > 5)
    return std::nullopt;
  return std::stoul(digits);
}

struct ShardSet {
  ShardHeader header;
  std::map<std::size_t, fs::path> present;
};

// All consistent shards in `dir`, skipping node `ignore` (0 = none).
ShardSet scan_shards(const fs::path& dir, std::size_t ignore = 0) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::io_error, "no shard directory " + dir.string());
  ShardSet set;
  bool have_header = false;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    const auto index = shard_index_of(entry.path());
    if (!index || *index == ignore) continue;
    const ShardHeader h = read_shard_header(entry.path());
    if (h.node_index != *index)
      throw Error(Errc::header_mismatch, entry.path().string() + " claims node " + std::to_string(h.node_index));
    if (!have_header) {
      set.header = h;
      have_header = true;
    } else if (!set.header.same_file_as(h)) {
      throw Error(Errc::header_mismatch, entry.path().string() + " disagrees with the other shard headers");
    }
    set.present[*index] = entry.path();
  }
  if (ec) throw Error(Errc::io_error, "cannot list " + dir.string() + ": " + ec.message());
  if (!have_header) throw Error(Errc::too_few_shards, "no shard files in " + dir.string());
  set.header.node_index = 0;
  return set;
}

CodeSpec resolve_code(const ShardHeader& header, const std::optional<CodeSpec>& supplied) {
  if (!supplied) return code_from_header(header);
  const CodeSpec& code = *supplied;
  require_byte_field(code.field());
  if (code.k() != header.k || code.construction() != header.construction)
    throw Error(Errc::header_mismatch, "supplied code does not match the shard headers");
  return code;
}

class ShardReader {
 public:
  ShardReader(const fs::path& file) : in_(file, std::ios::binary), file_(file) {
    if (!in_) throw Error(Errc::io_error, "cannot open " + file.string());
    in_.seekg(static_cast<std::streamoff>(ShardHeader::kSize));
  }
  void read(std::vector<std::uint8_t>& buf, std::size_t stripes) {
    buf.resize(2 * stripes);
    in_.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!in_) throw Error(Errc::io_error, "short read from " + file_.string());
  }

 private:
  std::ifstream in_;
  fs::path file_;
};

class ShardWriter {
 public:
  ShardWriter(const fs::path& file, const ShardHeader& header) : out_(file, std::ios::binary | std::ios::trunc), file_(file) {
    if (!out_) throw Error(Errc::io_error, "cannot create " + file.string());
    const auto bytes = header.serialize();
    write(bytes);
  }
  void write(std::span<const std::uint8_t> bytes) {
    out_.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out_) throw Error(Errc::io_error, "write failed on " + file_.string());
  }
  void close() {
    out_.close();
    if (!out_) throw Error(Errc::io_error, "close failed on " + file_.string());
  }

 private:
  std::ofstream out_;
  fs::path file_;
};

}  // namespace

std::array<std::uint8_t, ShardHeader::kSize> ShardHeader::serialize() const {
  std::array<std::uint8_t, kSize> b{};
  std::copy(kMagic.begin(), kMagic.end(), b.begin());
  b[4] = version;
  if (field_kind == FieldKind::prime) {
    b[5] = 0x00;
    put_le(&b[6], field_param, 3);
  } else {
    b[5] = 0x01;
    b[6] = static_cast<std::uint8_t>(field_param);
  }
  b[9] = static_cast<std::uint8_t>(construction);
  put_le(&b[10], k, 2);
  put_le(&b[12], node_index, 2);
  put_le(&b[14], stripe_count, 8);
  put_le(&b[22], payload_length, 8);
  return b;
}

ShardHeader ShardHeader::parse(std::span<const std::uint8_t> b) {
  auto bad = [](const std::string& what) { return Error(Errc::header_mismatch, "shard header: " + what); };
  if (b.size() < kSize) throw bad("truncated");
  if (!std::equal(kMagic.begin(), kMagic.end(), b.begin())) throw bad("bad magic");
  ShardHeader h;
  h.version = b[4];
  if (h.version != kVersion) throw bad("unsupported version " + std::to_string(h.version));
  if (b[5] == 0x00) {
    h.field_kind = FieldKind::prime;
    h.field_param = static_cast<std::uint32_t>(get_le(&b[6], 3));
  } else if (b[5] == 0x01 && b[7] == 0 && b[8] == 0) {
    h.field_kind = FieldKind::binary;
    h.field_param = b[6];
  } else {
    throw bad("bad field descriptor");
  }
  if (b[9] > 2) throw bad("bad construction byte");
  h.construction = static_cast<Construction>(b[9]);
  h.k = static_cast<std::uint16_t>(get_le(&b[10], 2));
  h.node_index = static_cast<std::uint16_t>(get_le(&b[12], 2));
  h.stripe_count = get_le(&b[14], 8);
  h.payload_length = get_le(&b[22], 8);
  if (h.k < 1) throw bad("k must be positive");
  if (h.node_index < 1 || h.node_index > h.k + 2) throw bad("node index outside [1, k+2]");
  if (h.payload_length > h.stripe_count * 2 * std::uint64_t{h.k}) throw bad("payload longer than the stripes");
  return h;
}

bool ShardHeader::same_file_as(const ShardHeader& o) const noexcept {
  ShardHeader a = *this, b = o;
  a.node_index = b.node_index = 0;
  return a == b;
}

fs::path shard_path(const fs::path& dir, std::size_t node) {
  return dir / ("shard_" + std::to_string(node) + ".mds");
}

ShardHeader read_shard_header(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + file.string());
  std::array<std::uint8_t, ShardHeader::kSize> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
    throw Error(Errc::header_mismatch, file.string() + " is shorter than a shard header");
  const ShardHeader h = ShardHeader::parse(bytes);
  std::error_code ec;
  const auto size = fs::file_size(file, ec);
  if (ec) throw Error(Errc::io_error, "cannot stat " + file.string());
  if (size != ShardHeader::kSize + 2 * h.stripe_count)
    throw Error(Errc::header_mismatch, file.string() + " body length disagrees with its stripe count");
  return h;
}

CodeSpec code_from_header(const ShardHeader& header) {
  if (header.field_kind != FieldKind::binary || header.field_param != 8)
    throw Error(Errc::field_mismatch, "shard data path needs gf:2^8");
  if (header.construction == Construction::custom)
    throw Error(Errc::bad_argument, "shards of a custom code need the code supplied explicitly");
  return build_code(header.construction, header.k, Field::binary(8));
}

EncodeSummary encode_file(const fs::path& input, const CodeSpec& code, const fs::path& out_dir) {
  require_byte_field(code.field());
  if (code.k() > 0xFFFF - 2) throw Error(Errc::bad_arity, "k does not fit the shard header");
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + input.string());
  std::error_code ec;
  const std::uint64_t length = fs::file_size(input, ec);
  if (ec) throw Error(Errc::io_error, "cannot stat " + input.string());
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::io_error, "cannot create " + out_dir.string());

  const std::size_t k = code.k(), n = code.n();
  const std::uint64_t stripe_bytes = 2 * k;
  EncodeSummary summary;
  summary.header.field_kind = FieldKind::binary;
  summary.header.field_param = 8;
  summary.header.construction = code.construction();
  summary.header.k = static_cast<std::uint16_t>(k);
  summary.header.stripe_count = (length + stripe_bytes - 1) / stripe_bytes;
  summary.header.payload_length = length;

  std::vector<ShardWriter> writers;
  writers.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    ShardHeader h = summary.header;
    h.node_index = static_cast<std::uint16_t>(i);
    summary.shards.push_back(shard_path(out_dir, i));
    writers.emplace_back(summary.shards.back(), h);
  }

  const ErasureDecoder parity(code, {k + 1, k + 2});
  std::vector<std::uint8_t> data;
  std::vector<std::vector<std::uint8_t>> bodies(n);
  std::vector<Symbol> sym(2 * k), out(4);
  for (std::uint64_t done = 0; done < summary.header.stripe_count;) {
    const std::size_t batch =
        static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, summary.header.stripe_count - done));
    data.assign(batch * stripe_bytes, 0);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (in.bad()) throw Error(Errc::io_error, "read failed on " + input.string());
    in.clear();
    for (auto& b : bodies) b.resize(2 * batch);
    for (std::size_t s = 0; s < batch; ++s) {
      const std::uint8_t* block = &data[s * stripe_bytes];
      for (std::size_t t = 0; t < 2 * k; ++t) sym[t] = block[t];
      parity.apply(sym, out);
      for (std::size_t i = 0; i < k; ++i) {
        bodies[i][2 * s] = block[2 * i];
        bodies[i][2 * s + 1] = block[2 * i + 1];
      }
      for (std::size_t t = 0; t < 2; ++t) {
        bodies[k + t][2 * s] = static_cast<std::uint8_t>(out[2 * t]);
        bodies[k + t][2 * s + 1] = static_cast<std::uint8_t>(out[2 * t + 1]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) writers[i].write(bodies[i]);
    done += batch;
  }
  for (auto& w : writers) w.close();
  return summary;
}

DecodeSummary decode_file(const fs::path& shard_dir, const fs::path& out_path, const std::optional<CodeSpec>& supplied) {
  const ShardSet set = scan_shards(shard_dir);
  const CodeSpec code = resolve_code(set.header, supplied);
  const std::size_t k = code.k(), n = code.n();

  DecodeSummary summary;
  for (std::size_t i = 1; i <= n; ++i)
    if (!set.present.contains(i)) summary.missing.push_back(i);
  if (summary.missing.size() > 2)
    throw Error(Errc::too_few_shards, std::to_string(n - summary.missing.size()) + " shards present, need " +
                                          std::to_string(k));

  const ErasureDecoder decoder(code, summary.missing);
  std::vector<ShardReader> readers;
  for (auto j : decoder.survivors()) readers.emplace_back(set.present.at(j));

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot create " + out_path.string());

  const std::uint64_t stripes = set.header.stripe_count;
  const std::uint64_t stripe_bytes = 2 * k;
  std::uint64_t remaining = set.header.payload_length;
  std::vector<std::vector<std::uint8_t>> bodies(readers.size());
  std::vector<std::uint8_t> plain;
  std::vector<Symbol> in_sym(2 * decoder.survivors().size()), out_sym(2 * decoder.erased().size());
  // Position of each data node among survivors or erased nodes.
  std::vector<std::ptrdiff_t> survivor_slot(n + 1, -1), erased_slot(n + 1, -1);
  for (std::size_t t = 0; t < decoder.survivors().size(); ++t) survivor_slot[decoder.survivors()[t]] = t;
  for (std::size_t t = 0; t < decoder.erased().size(); ++t) erased_slot[decoder.erased()[t]] = t;

  for (std::uint64_t done = 0; done < stripes;) {
    const std::size_t batch = static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, stripes - done));
    for (std::size_t r = 0; r < readers.size(); ++r) readers[r].read(bodies[r], batch);
    plain.resize(batch * stripe_bytes);
    for (std::size_t s = 0; s < batch; ++s) {
      if (!decoder.erased().empty()) {
        for (std::size_t r = 0; r < readers.size(); ++r) {
          in_sym[2 * r] = bodies[r][2 * s];
          in_sym[2 * r + 1] = bodies[r][2 * s + 1];
        }
        decoder.apply(in_sym, out_sym);
      }
      for (std::size_t i = 1; i <= k; ++i) {
        std::uint8_t* dst = &plain[s * stripe_bytes + 2 * (i - 1)];
        if (survivor_slot[i] >= 0) {
          dst[0] = bodies[survivor_slot[i]][2 * s];
          dst[1] = bodies[survivor_slot[i]][2 * s + 1];
        } else {
          dst[0] = static_cast<std::uint8_t>(out_sym[2 * erased_slot[i]]);
          dst[1] = static_cast<std::uint8_t>(out_sym[2 * erased_slot[i] + 1]);
        }
      }
    }
    const std::uint64_t take = std::min<std::uint64_t>(remaining, plain.size());
    out.write(reinterpret_cast<const char*>(plain.data()), static_cast<std::streamsize>(take));
    if (!out) throw Error(Errc::io_error, "write failed on " + out_path.string());
    remaining -= take;
    done += batch;
  }
  out.close();
  if (!out) throw Error(Errc::io_error, "close failed on " + out_path.string());
  summary.bytes = set.header.payload_length;
  return summary;
}

nlohmann::json to_json(const TransferReport& r) {
  nlohmann::json helpers = nlohmann::json::array();
  for (const auto& h : r.helpers)
    helpers.push_back({{"node", h.node},
                       {"symbols_sent", h.symbols_sent},
                       {"symbols_read", h.symbols_read},
                       {"read_positions", h.read_positions}});
  return {{"failed", r.failed},
          {"helpers", helpers},
          {"total_sent", r.total_sent},
          {"total_read", r.total_read},
          {"stripes", r.stripes}};
}

TransferReport repair_shard(const fs::path& shard_dir, std::size_t failed, const RepairOptions& options) {
  const ShardSet set = scan_shards(shard_dir, failed);
  const CodeSpec code = resolve_code(set.header, options.code);
  if (failed < 1 || failed > code.n())
    throw Error(Errc::bad_argument, "node " + std::to_string(failed) + " outside [1, " + std::to_string(code.n()) + "]");
  const Mat m = options.matrix ? *options.matrix : code.designed_repair(failed);
  const RepairPlan plan = plan_repair(code, m, failed);

  for (auto j : plan.contacted())
    if (!set.present.contains(j)) throw Error(Errc::missing_helper, "helper shard " + std::to_string(j) + " is missing");

  TransferReport report;
  report.failed = failed;
  report.stripes = set.header.stripe_count;
  std::vector<ShardReader> readers;
  std::vector<std::vector<std::size_t>> positions;
  std::size_t payload_width = 0;
  for (auto j : plan.contacted()) {
    readers.emplace_back(set.present.at(j));
    positions.push_back(plan.read_positions(j));
    payload_width += plan.helper(j).payload_length();
    report.helpers.push_back({j, 0, 0, positions.back()});
  }

  ShardHeader header = set.header;
  header.node_index = static_cast<std::uint16_t>(failed);
  const fs::path target = shard_path(shard_dir, failed);
  fs::path staging = target;
  staging += ".partial";
  ShardWriter writer(staging, header);

  std::vector<std::vector<std::uint8_t>> bodies(readers.size());
  std::vector<std::uint8_t> rebuilt;
  std::vector<Symbol> payloads(payload_width), column(2), repaired(2);
  for (std::uint64_t done = 0; done < report.stripes;) {
    const std::size_t batch =
        static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, report.stripes - done));
    for (std::size_t r = 0; r < readers.size(); ++r) readers[r].read(bodies[r], batch);
    rebuilt.resize(2 * batch);
    for (std::size_t s = 0; s < batch; ++s) {
      std::size_t offset = 0;
      for (std::size_t r = 0; r < readers.size(); ++r) {
        column[0] = column[1] = 0;
        for (auto p : positions[r]) column[p] = bodies[r][2 * s + p];
        const std::size_t len = helper_payload(plan, plan.contacted()[r], column,
                                               std::span<Symbol>(payloads).subspan(offset));
        report.helpers[r].symbols_read += positions[r].size();
        report.helpers[r].symbols_sent += len;
        offset += len;
      }
      execute_repair(plan, payloads, repaired);
      rebuilt[2 * s] = static_cast<std::uint8_t>(repaired[0]);
      rebuilt[2 * s + 1] = static_cast<std::uint8_t>(repaired[1]);
    }
    writer.write(rebuilt);
    done += batch;
  }
  writer.close();
  std::error_code ec;
  fs::rename(staging, target, ec);
  if (ec) throw Error(Errc::io_error, "cannot move rebuilt shard into place: " + ec.message());

  for (const auto& h : report.helpers) {
    report.total_sent += h.symbols_sent;
    report.total_read += h.symbols_read;
  }
  return report;
}

}  // namespace mds22

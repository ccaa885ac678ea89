#include "mds22/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mds22/constructions.hpp"
#include "mds22/oracle.hpp"
#include "mds22/store.hpp"

namespace mds22 {

namespace {

using nlohmann::json;

struct CodeFlags {
  std::size_t k = 0;
  std::string construction;
  std::string field;
  std::string custom;
};

CodeSpec resolve_code(const CodeFlags& f, bool field_required) {
  if (!f.custom.empty()) {
    if (!f.construction.empty() || f.k != 0)
      throw Error(Errc::bad_argument, "--custom excludes --k and --construction");
    return load_custom_code(f.custom);
  }
  if (f.construction.empty() || f.k == 0)
    throw Error(Errc::bad_argument, "--k and --construction are required");
  const Construction c = parse_construction(f.construction);
  if (c == Construction::custom) throw Error(Errc::bad_argument, "use --custom FILE for custom codes");
  if (f.k < 2) throw Error(Errc::bad_arity, "k must be at least 2");
  if (f.field.empty() && field_required) throw Error(Errc::bad_argument, "--field is required");
  const FieldPtr field = f.field.empty() ? default_field(c, f.k) : Field::parse(f.field);
  return build_code(c, f.k, field);
}

Mat mat_from_json(const FieldPtr& field, const json& rows, std::size_t r, std::size_t c, const char* what) {
  if (!rows.is_array() || rows.size() != r) throw Error(Errc::dimension_mismatch, std::string(what) + " has the wrong shape");
  std::vector<Symbol> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != c)
      throw Error(Errc::dimension_mismatch, std::string(what) + " has the wrong shape");
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw Error(Errc::bad_argument, std::string(what) + " entries must be field elements");
      entries.push_back(v.get<Symbol>());
    }
  }
  return Mat(field, r, c, std::move(entries));
}

void print_json(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

std::string pair_str(const std::optional<std::pair<std::size_t, std::size_t>>& p) {
  return p ? "(" + std::to_string(p->first) + ", " + std::to_string(p->second) + ")" : "-";
}

int cmd_encode(const CodeFlags& flags, const std::string& input, const std::string& out_dir, bool as_json,
               std::ostream& out) {
  CodeFlags f = flags;
  if (f.field.empty()) f.field = "gf:2^8";
  const CodeSpec code = resolve_code(f, false);
  const auto summary = encode_file(input, code, out_dir);
  if (as_json) {
    json shards = json::array();
    for (const auto& p : summary.shards) shards.push_back(p.string());
    print_json(out, {{"k", code.k()},
                     {"construction", to_string(code.construction())},
                     {"field", code.field().describe()},
                     {"stripes", summary.header.stripe_count},
                     {"payload_length", summary.header.payload_length},
                     {"shards", shards}});
  } else {
    out << "encoded " << summary.header.payload_length << " bytes into " << summary.shards.size() << " shards ("
        << summary.header.stripe_count << " stripes, " << to_string(code.construction()) << ", k="
        << code.k() << ", " << code.field().describe() << ")\n";
    for (const auto& p : summary.shards) out << "  " << p.string() << '\n';
  }
  return kExitOk;
}

int cmd_decode(const std::string& dir, const std::string& output, bool as_json, std::ostream& out) {
  const auto summary = decode_file(dir, output);
  if (as_json) {
    print_json(out, {{"bytes", summary.bytes}, {"missing", summary.missing}, {"output", output}});
  } else {
    out << "decoded " << summary.bytes << " bytes to " << output;
    if (!summary.missing.empty()) {
      out << " (rebuilt nodes";
      for (auto i : summary.missing) out << ' ' << i;
      out << ')';
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_repair(const std::string& dir, std::size_t node, bool as_json, std::ostream& out) {
  if (node < 1) throw Error(Errc::bad_argument, "node indices start at 1");
  const auto report = repair_shard(dir, node);
  if (as_json) {
    print_json(out, to_json(report));
    return kExitOk;
  }
  out << "repaired shard " << report.failed << " (" << report.stripes << " stripes)\n";
  out << "  node  read  sent\n";
  for (const auto& h : report.helpers)
    out << "  " << std::setw(4) << h.node << "  " << std::setw(4) << h.symbols_read << "  " << std::setw(4)
        << h.symbols_sent << '\n';
  out << "total_sent " << report.total_sent << "\ntotal_read " << report.total_read << '\n';
  return kExitOk;
}

int cmd_verify(const CodeFlags& flags, bool as_json, std::ostream& out) {
  // A construction failing its own MDS gate throws MdsCheckFailed, which maps to exit 5.
  const CodeSpec code = resolve_code(flags, false);
  const MdsCheck mds = mds_check(code);
  std::optional<PatternCheck> pattern;
  if (code.construction() != Construction::custom && mds) pattern = check_designed_pattern(code);
  const bool ok = mds.ok && (!pattern || pattern->ok);

  if (as_json) {
    json doc = {{"k", code.k()},
                {"n", code.n()},
                {"construction", to_string(code.construction())},
                {"field", code.field().describe()},
                {"mds", {{"ok", mds.ok}, {"failing_pair", nullptr}}},
                {"pattern", nullptr},
                {"ok", ok}};
    if (mds.failing_pair) doc["mds"]["failing_pair"] = {mds.failing_pair->first, mds.failing_pair->second};
    if (pattern) {
      doc["pattern"] = {{"kind", code.construction() == Construction::c1 ? "rank" : "nz"},
                        {"ok", pattern->ok},
                        {"first_mismatch", nullptr}};
      if (pattern->first_mismatch)
        doc["pattern"]["first_mismatch"] = {pattern->first_mismatch->first, pattern->first_mismatch->second};
    }
    print_json(out, doc);
  } else {
    out << to_string(code.construction()) << " k=" << code.k() << " n=" << code.n() << " over "
        << code.field().describe() << '\n';
    out << "mds: " << (mds.ok ? "pass" : "FAIL at pair " + pair_str(mds.failing_pair)) << '\n';
    if (pattern)
      out << (code.construction() == Construction::c1 ? "rank" : "nz") << " pattern: "
          << (pattern->ok ? "pass" : "FAIL at " + pair_str(pattern->first_mismatch)) << '\n';
  }
  return ok ? kExitOk : kExitMdsFailure;
}

int cmd_bounds(const CodeFlags& flags, bool as_json, std::ostream& out) {
  const CodeSpec code = resolve_code(flags, true);
  if (code.field().order() > kOracleMaxOrder)
    throw Error(Errc::field_too_large, code.field().describe() + " exceeds the oracle limit q <= 16");
  const BoundsReport r = bounds_report(code);
  if (as_json) {
    print_json(out, to_json(r));
    return kExitOk;
  }
  out << to_string(r.construction) << " k=" << r.k << " over " << r.field << '\n';
  out << "node  beta  gamma  gamma_relaxed\n";
  for (const auto& o : r.per_node)
    out << std::setw(4) << o.node << "  " << std::setw(4) << o.beta << "  " << std::setw(5) << o.gamma << "  "
        << std::setw(13) << o.gamma_relaxed << '\n';
  auto row = [&](const char* name, const std::string& observed, const std::string& bound, bool ok) {
    out << std::left << std::setw(10) << name << "  " << std::setw(8) << observed << "  " << std::setw(8) << bound
        << "  " << (ok ? "yes" : "NO") << std::right << '\n';
  };
  out << "metric      observed  bound     satisfied\n";
  row("avg_beta", r.avg_beta.str(), r.bound_avg_beta.str(), r.avg_beta_ok);
  row("max_beta", std::to_string(r.max_beta), std::to_string(r.bound_max_beta), r.max_beta_ok);
  row("avg_gamma", r.avg_gamma.str(), r.bound_avg_gamma.str(), r.avg_gamma_ok);
  row("max_gamma", std::to_string(r.max_gamma), std::to_string(r.bound_max_gamma), r.max_gamma_ok);
  return kExitOk;
}

void add_code_flags(CLI::App* cmd, CodeFlags& f, bool with_custom) {
  cmd->add_option("--k", f.k, "number of data nodes (>= 2)");
  cmd->add_option("--construction", f.construction, "c1 or c2");
  cmd->add_option("--field", f.field, "gf:p=<prime>, gf:2^<m> or gf:2^<m>/0x<poly>");
  if (with_custom) cmd->add_option("--custom", f.custom, "JSON file with a custom code");
}

}  // namespace

int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::io_error:
    case Errc::header_mismatch:
      return kExitIo;
    case Errc::missing_helper:
    case Errc::too_few_shards:
      return kExitMissingHelpers;
    case Errc::mds_check_failed:
    case Errc::not_mds:
    case Errc::singular_parity_pair:
      return kExitMdsFailure;
    case Errc::field_too_large:
      return kExitOracleGuard;
    default:
      return kExitUsage;
  }
}

CodeSpec code_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("field") || !doc.contains("h"))
    throw Error(Errc::bad_argument, "custom code needs \"field\" and \"h\"");
  const FieldPtr field = Field::parse(doc.at("field").get<std::string>());
  std::vector<Mat> h;
  for (const auto& block : doc.at("h")) h.push_back(mat_from_json(field, block, 4, 2, "parity-check block"));
  std::optional<std::vector<Mat>> repair;
  if (doc.contains("repair")) {
    repair.emplace();
    for (const auto& m : doc.at("repair")) repair->push_back(mat_from_json(field, m, 2, 4, "repair matrix"));
  }
  return CodeSpec(field, std::move(h), std::move(repair), Construction::custom);
}

CodeSpec load_custom_code(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::io_error, "cannot open " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::bad_argument, file.string() + ": " + e.what());
  }
  return code_from_json(doc);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"(k+2, k, 2) MDS array codes: encode, repair, verify and bound checks", "mds22"};
  app.require_subcommand(1);
  bool as_json = false;

  CodeFlags code_flags;
  std::string input, out_dir, dir, output;
  std::size_t node = 0;

  auto* encode = app.add_subcommand("encode", "split a file into k+2 shards");
  add_code_flags(encode, code_flags, false);
  encode->add_option("--input", input, "file to encode")->required();
  encode->add_option("--out", out_dir, "output directory")->required();
  encode->add_flag("--json", as_json, "JSON output");

  auto* decode = app.add_subcommand("decode", "rebuild the original file from any k shards");
  decode->add_option("--dir", dir, "shard directory")->required();
  decode->add_option("--output", output, "output file")->required();
  decode->add_flag("--json", as_json, "JSON output");

  auto* repair = app.add_subcommand("repair", "rebuild one shard with its designed repair matrix");
  repair->add_option("--dir", dir, "shard directory")->required();
  repair->add_option("--node", node, "1-based node index")->required();
  repair->add_flag("--json", as_json, "JSON output");

  auto* verify = app.add_subcommand("verify", "check the MDS property and the repair pattern table");
  add_code_flags(verify, code_flags, true);
  verify->add_flag("--json", as_json, "JSON output");

  auto* bounds = app.add_subcommand("bounds", "exhaustive repair optima against the lower bounds (q <= 16)");
  add_code_flags(bounds, code_flags, true);
  bounds->add_flag("--json", as_json, "JSON output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (encode->parsed()) return cmd_encode(code_flags, input, out_dir, as_json, out);
    if (decode->parsed()) return cmd_decode(dir, output, as_json, out);
    if (repair->parsed()) return cmd_repair(dir, node, as_json, out);
    if (verify->parsed()) return cmd_verify(code_flags, as_json, out);
    return cmd_bounds(code_flags, as_json, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace mds22

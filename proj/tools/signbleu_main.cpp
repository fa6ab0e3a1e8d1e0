// signbleu command line: blockify, linearize, delinearize, grams, stats,
// score, simulate. Data goes to stdout, diagnostics to stderr. Exit codes:
// 0 success, 1 data error, 2 usage error.
//
// Built on the shared-library C API only (signbleu/signbleu.h); JSON here is
// presentation plumbing for score reports and configs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "signbleu/signbleu.h"

using nlohmann::json;

namespace {

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& message) {
  throw CliError{exit_code, message};
}

void check(sb_status status) {
  if (status != SB_OK) {
    fail(status == SB_ERROR_INVALID_ARGUMENT || status == SB_ERROR_CONFIG ? 2 : 1,
         sb_last_error());
  }
}

struct StringDeleter {
  void operator()(char* s) const { sb_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct MappingDeleter {
  void operator()(sb_mapping* m) const { sb_mapping_free(m); }
};
using OwnedMapping = std::unique_ptr<sb_mapping, MappingDeleter>;

struct DocsetDeleter {
  void operator()(sb_docset* d) const { sb_docset_free(d); }
};
using OwnedDocset = std::unique_ptr<sb_docset, DocsetDeleter>;

struct BlocksetDeleter {
  void operator()(sb_blockset* b) const { sb_blockset_free(b); }
};
using OwnedBlockset = std::unique_ptr<sb_blockset, BlocksetDeleter>;

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() &&
         text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_file_or_die(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(1, "IO_ERROR: cannot open file [" + path + "]");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Mapping from --mapping, the SIGNBLEU_MAPPING environment variable, or the
/// manifest the input itself carries.
OwnedMapping resolve_mapping(const std::string& flag_path,
                             const sb_docset* fallback_source) {
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SIGNBLEU_MAPPING")) path = env;
  }
  if (!path.empty()) {
    sb_mapping* mapping = nullptr;
    check(sb_mapping_from_json(read_file_or_die(path).c_str(), &mapping));
    return OwnedMapping(mapping);
  }
  if (fallback_source != nullptr) {
    sb_mapping* mapping = nullptr;
    if (sb_docset_mapping(fallback_source, &mapping) == SB_OK) {
      return OwnedMapping(mapping);
    }
  }
  fail(2, "no channel mapping: pass --mapping, set SIGNBLEU_MAPPING, or use a "
          "corpus manifest that embeds one");
}

void print_warnings(const sb_docset* docs) {
  OwnedString warnings;
  char* raw = nullptr;
  if (sb_docset_warnings(docs, &raw) == SB_OK) {
    warnings.reset(raw);
    if (warnings && *warnings.get() != '\0') std::cerr << warnings.get();
  }
}

/// Loads sign input as block matrices. Accepts block JSON, corpus/document
/// JSON (blockified via the mapping), .eaf, or token lines (delinearized).
/// `allow_tokens` guards the token path for reference data. When
/// `mapping_out` is non-null it receives the mapping that was resolved along
/// the way (if any), so commands needing one can reuse a manifest's mapping.
OwnedBlockset load_blocks(const std::string& path, const std::string& mapping_path,
                          bool allow_tokens, bool warn_tokens,
                          OwnedMapping* mapping_out = nullptr) {
  const std::string bytes = read_file_or_die(path);
  auto blockify_docs = [&](sb_docset* docs) {
    OwnedDocset owned(docs);
    print_warnings(docs);
    OwnedMapping mapping = resolve_mapping(mapping_path, docs);
    sb_blockset* blocks = nullptr;
    check(sb_docset_blockify(docs, mapping.get(), &blocks));
    if (mapping_out != nullptr) *mapping_out = std::move(mapping);
    return OwnedBlockset(blocks);
  };

  if (ends_with(path, ".eaf")) {
    sb_docset* docs = nullptr;
    check(sb_docset_from_file(path.c_str(), &docs));
    return blockify_docs(docs);
  }

  const json j = json::parse(bytes, nullptr, false);
  if (!j.is_discarded()) {
    const bool looks_like_blocks =
        (j.is_object() && j.contains("columns")) ||
        (j.is_array() && (j.empty() || (j[0].is_object() && j[0].contains("columns"))));
    if (looks_like_blocks) {
      sb_blockset* blocks = nullptr;
      check(sb_blockset_from_json(bytes.c_str(), &blocks));
      return OwnedBlockset(blocks);
    }
    sb_docset* docs = nullptr;
    check(sb_docset_from_file(path.c_str(), &docs));
    return blockify_docs(docs);
  }

  // Not XML, not JSON: token lines.
  if (!allow_tokens) {
    fail(1,
         "reference input looks like linearized tokens [" + path +
             "]; block or EAF references are required because lifting "
             "linearized references inflates scores (pass --allow-linear-refs "
             "to override)");
  }
  if (warn_tokens) {
    std::cerr << "warning: treating " << path
              << " as linearized tokens; lifted references lose overlap "
                 "structure and inflate scores\n";
  }
  OwnedMapping mapping = resolve_mapping(mapping_path, nullptr);
  sb_blockset* blocks = nullptr;
  check(sb_delinearize(bytes.c_str(), mapping.get(), &blocks));
  if (mapping_out != nullptr) *mapping_out = std::move(mapping);
  return OwnedBlockset(blocks);
}

std::string build_config_json(int max_t, int max_c, const std::string& scope,
                              const std::string& smoothing, bool effective_order,
                              const std::vector<std::string>& manual_channels) {
  json cfg;
  cfg["max_temporal"] = max_t;
  cfg["max_channel"] = max_c;
  cfg["scope"] = scope;
  cfg["smoothing"] = smoothing;
  cfg["effective_order"] = effective_order;
  if (!manual_channels.empty()) cfg["manual_channels"] = manual_channels;
  return cfg.dump();
}

std::string render_text_report(const json& report, bool percent) {
  const double scale = percent ? 100.0 : 1.0;
  std::ostringstream os;
  os << "SignBLEU = " << report["score"].get<double>() * scale << "\n";
  for (const auto& p : report["precisions"]) {
    os << p["order"].get<std::string>() << " = " << p["numerator"].get<long long>()
       << "/" << p["denominator"].get<long long>() << " = "
       << p["precision"].get<double>();
    if (p["excluded"].get<bool>()) os << " (excluded)";
    os << "\n";
  }
  os << "BP = " << report["brevity_penalty"].get<double>()
     << " (|h| = " << report["hyp_length"].get<long long>()
     << ", |r| = " << report["ref_length"].get<long long>() << ")\n";
  os << "signature: " << report["signature"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SignBLEU: multi-channel sign language translation metrics"};
  app.require_subcommand(1);

  std::string mapping_path;
  app.add_option("--mapping", mapping_path,
                 "channel mapping JSON (or set SIGNBLEU_MAPPING)");

  // blockify
  auto* blockify_cmd = app.add_subcommand(
      "blockify", "convert EAF or document JSON to block matrices");
  std::string blockify_input;
  blockify_cmd->add_option("input", blockify_input)->required();

  // linearize
  auto* linearize_cmd = app.add_subcommand(
      "linearize", "convert annotations or blocks to token lines");
  std::string linearize_input;
  linearize_cmd->add_option("input", linearize_input)->required();

  // delinearize
  auto* delinearize_cmd = app.add_subcommand(
      "delinearize", "lift token lines to canonical block matrices");
  std::string delinearize_input;
  delinearize_cmd->add_option("input", delinearize_input)->required();

  // grams
  auto* grams_cmd = app.add_subcommand("grams", "dump gram multisets as JSON");
  std::string grams_input;
  int grams_t = 4;
  int grams_c = 4;
  grams_cmd->add_option("input", grams_input)->required();
  grams_cmd->add_option("--t", grams_t, "max temporal order");
  grams_cmd->add_option("--c", grams_c, "max channel order");

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "per-order average gram counts per document");
  std::string stats_input;
  int stats_t = 4;
  int stats_c = 4;
  stats_cmd->add_option("input", stats_input)->required();
  stats_cmd->add_option("--t", stats_t, "max temporal order");
  stats_cmd->add_option("--c", stats_c, "max channel order");

  // score
  auto* score_cmd = app.add_subcommand("score", "SignBLEU score with signature");
  std::string hyp_path;
  std::vector<std::string> ref_paths;
  int score_t = 3;
  int score_c = 2;
  std::string scope = "all";
  std::string smoothing = "exp";
  bool effective_order = false;
  std::string report_format = "text";
  bool percent = false;
  bool allow_linear_refs = false;
  bool per_segment = false;
  score_cmd->add_option("--hyp", hyp_path, "hypothesis blocks/tokens/EAF")->required();
  score_cmd->add_option("--ref", ref_paths, "reference blocks/EAF (repeatable)")
      ->required();
  score_cmd->add_option("--t", score_t, "max temporal order");
  score_cmd->add_option("--c", score_c, "max channel order (1 = none)");
  score_cmd->add_option("--scope", scope)->check(CLI::IsMember({"all", "manual"}));
  score_cmd->add_option("--smooth", smoothing)
      ->check(CLI::IsMember({"exp", "none"}));
  score_cmd->add_flag("--effective-order", effective_order,
                      "drop empty orders instead of zeroing the score");
  score_cmd->add_option("--report", report_format)
      ->check(CLI::IsMember({"text", "json"}));
  score_cmd->add_flag("--percent", percent, "display scores scaled by 100");
  score_cmd->add_flag("--allow-linear-refs", allow_linear_refs,
                      "accept token-file references despite inflation");
  score_cmd->add_flag("--per-segment", per_segment,
                      "also print one report line per segment");

  // simulate
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "sampling-based correlation against text-side BLEU");
  std::string corpus_path;
  std::uint64_t runs = 200;
  std::uint64_t sample_size = 50;
  std::uint64_t seed = 0;
  int sim_t = 4;
  int sim_c = 4;
  std::string table_out;
  std::string extra_path;
  simulate_cmd->add_option("--corpus", corpus_path, "paired corpus manifest JSON")
      ->required();
  simulate_cmd->add_option("--runs", runs);
  simulate_cmd->add_option("--sample-size", sample_size);
  simulate_cmd->add_option("--seed", seed);
  simulate_cmd->add_option("--max-t", sim_t, "max temporal order in the grid");
  simulate_cmd->add_option("--max-c", sim_c, "max channel order in the grid");
  simulate_cmd->add_option("--table-out", table_out, "write per-run score table TSV");
  simulate_cmd->add_option("--extra", extra_path,
                           "merge externally computed score columns (TSV)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (blockify_cmd->parsed()) {
      OwnedBlockset blocks =
          load_blocks(blockify_input, mapping_path, false, false);
      char* out = nullptr;
      check(sb_blockset_to_json(blocks.get(), &out));
      OwnedString owned(out);
      std::cout << owned.get() << "\n";
    } else if (linearize_cmd->parsed()) {
      OwnedMapping mapping;
      OwnedBlockset blocks =
          load_blocks(linearize_input, mapping_path, false, false, &mapping);
      if (!mapping) mapping = resolve_mapping(mapping_path, nullptr);
      char* out = nullptr;
      check(sb_blockset_linearize(blocks.get(), mapping.get(), &out));
      OwnedString owned(out);
      std::cout << owned.get();
    } else if (delinearize_cmd->parsed()) {
      OwnedMapping mapping = resolve_mapping(mapping_path, nullptr);
      sb_blockset* blocks = nullptr;
      check(sb_delinearize(read_file_or_die(delinearize_input).c_str(),
                           mapping.get(), &blocks));
      OwnedBlockset owned_blocks(blocks);
      char* out = nullptr;
      check(sb_blockset_to_json(owned_blocks.get(), &out));
      OwnedString owned(out);
      std::cout << owned.get() << "\n";
    } else if (grams_cmd->parsed()) {
      OwnedBlockset blocks = load_blocks(grams_input, mapping_path, false, false);
      char* out = nullptr;
      check(sb_blockset_grams_json(blocks.get(), grams_t, grams_c, &out));
      OwnedString owned(out);
      std::cout << owned.get() << "\n";
    } else if (stats_cmd->parsed()) {
      OwnedBlockset blocks = load_blocks(stats_input, mapping_path, false, false);
      char* out = nullptr;
      check(sb_blockset_gram_stats_tsv(blocks.get(), stats_t, stats_c, &out));
      OwnedString owned(out);
      std::cout << owned.get();
    } else if (score_cmd->parsed()) {
      OwnedMapping score_mapping;
      OwnedBlockset hyp =
          load_blocks(hyp_path, mapping_path, true, true, &score_mapping);
      std::vector<OwnedBlockset> refs;
      std::vector<const sb_blockset*> ref_ptrs;
      for (const auto& ref_path : ref_paths) {
        refs.push_back(
            load_blocks(ref_path, mapping_path, allow_linear_refs, true));
        ref_ptrs.push_back(refs.back().get());
      }
      std::vector<std::string> manual_channels;
      if (scope == "manual") {
        if (!score_mapping) score_mapping = resolve_mapping(mapping_path, nullptr);
        char* mapping_json = nullptr;
        check(sb_mapping_to_json(score_mapping.get(), &mapping_json));
        OwnedString owned_mapping(mapping_json);
        const json mj = json::parse(mapping_json);
        for (const auto& c : mj["manual"]) {
          manual_channels.push_back(c.get<std::string>());
        }
      }
      const std::string cfg = build_config_json(score_t, score_c, scope, smoothing,
                                                effective_order, manual_channels);
      if (per_segment) {
        for (size_t i = 0; i < sb_blockset_size(hyp.get()); ++i) {
          char* one_json = nullptr;
          check(sb_blockset_to_json(hyp.get(), &one_json));
          OwnedString owned_hyp_json(one_json);
          const json all = json::parse(one_json);
          json hyp_one = json::array({all[i]});
          sb_blockset* hyp_seg = nullptr;
          check(sb_blockset_from_json(hyp_one.dump().c_str(), &hyp_seg));
          OwnedBlockset owned_seg(hyp_seg);
          std::vector<OwnedBlockset> ref_segs;
          std::vector<const sb_blockset*> ref_seg_ptrs;
          for (const auto* ref : ref_ptrs) {
            char* ref_json = nullptr;
            check(sb_blockset_to_json(ref, &ref_json));
            OwnedString owned_ref_json(ref_json);
            const json ref_all = json::parse(ref_json);
            sb_blockset* ref_seg = nullptr;
            check(sb_blockset_from_json(json::array({ref_all[i]}).dump().c_str(),
                                        &ref_seg));
            ref_segs.push_back(OwnedBlockset(ref_seg));
            ref_seg_ptrs.push_back(ref_seg);
          }
          char* report = nullptr;
          check(sb_score(owned_seg.get(), ref_seg_ptrs.data(), ref_seg_ptrs.size(),
                         cfg.c_str(), &report));
          OwnedString owned_report(report);
          const json rj = json::parse(report);
          std::cout << "segment " << i << "\t"
                    << rj["score"].get<double>() * (percent ? 100.0 : 1.0) << "\n";
        }
      }
      char* report = nullptr;
      check(sb_score(hyp.get(), ref_ptrs.data(), ref_ptrs.size(), cfg.c_str(),
                     &report));
      OwnedString owned_report(report);
      if (report_format == "json") {
        std::cout << owned_report.get() << "\n";
      } else {
        std::cout << render_text_report(json::parse(owned_report.get()), percent);
      }
    } else if (simulate_cmd->parsed()) {
      sb_docset* docs = nullptr;
      check(sb_docset_from_file(corpus_path.c_str(), &docs));
      OwnedDocset owned_docs(docs);
      print_warnings(docs);
      OwnedMapping mapping = resolve_mapping(mapping_path, docs);
      std::string extra;
      if (!extra_path.empty()) extra = read_file_or_die(extra_path);
      char* table = nullptr;
      char* correlations = nullptr;
      check(sb_simulate(docs, mapping.get(), runs, sample_size, seed, sim_t, sim_c,
                        extra.empty() ? nullptr : extra.c_str(),
                        table_out.empty() ? nullptr : &table, &correlations));
      OwnedString owned_table(table);
      OwnedString owned_correlations(correlations);
      if (!table_out.empty()) {
        std::ofstream out(table_out, std::ios::binary);
        if (!out) fail(1, "IO_ERROR: cannot write file [" + table_out + "]");
        out << owned_table.get();
      }
      std::cout << owned_correlations.get();
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  }
  return 0;
}

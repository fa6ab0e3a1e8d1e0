#include "signbleu/signbleu.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "signbleu/corpus_io.hpp"
#include "signbleu/harness.hpp"
#include "signbleu/score.hpp"

using nlohmann::json;

struct sb_mapping {
  signbleu::ChannelMapping value;
};

struct sb_docset {
  std::vector<signbleu::TimeAlignedDocument> documents;
  signbleu::ChannelMapping mapping;
  bool has_mapping = false;
  std::vector<std::string> warnings;
};

struct sb_blockset {
  std::vector<signbleu::BlockMatrix> blocks;
};

namespace {

thread_local std::string g_last_error;

sb_status status_for(signbleu::ErrorCode code) {
  using signbleu::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidConfig:
      return SB_ERROR_CONFIG;
    case ErrorCode::SchemaError:
    case ErrorCode::MalformedXml:
    case ErrorCode::MissingTimeValue:
    case ErrorCode::DanglingSlotRef:
      return SB_ERROR_SCHEMA;
    case ErrorCode::IoError:
      return SB_ERROR_IO;
    case ErrorCode::DegenerateInput:
      return SB_ERROR_DEGENERATE;
    default:
      return SB_ERROR_DATA;
  }
}

template <typename Fn>
sb_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SB_OK;
  } catch (const signbleu::Error& e) {
    g_last_error = e.what();
    return status_for(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SB_ERROR_INTERNAL;
  }
}

sb_status invalid_argument(const char* message) {
  g_last_error = std::string("INVALID_ARGUMENT: ") + message;
  return SB_ERROR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

signbleu::ScoreConfig config_from_json(const char* config_json) {
  signbleu::ScoreConfig cfg;
  if (config_json == nullptr || *config_json == '\0') return cfg;
  const json j = json::parse(config_json, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw signbleu::Error(signbleu::ErrorCode::SchemaError,
                          "score config is not a JSON object", "config");
  }
  cfg.max_temporal = j.value("max_temporal", cfg.max_temporal);
  cfg.max_channel = j.value("max_channel", cfg.max_channel);
  if (j.contains("scope")) {
    const std::string scope = j["scope"].get<std::string>();
    if (scope == "all") {
      cfg.scope = signbleu::ChannelScope::All;
    } else if (scope == "manual") {
      cfg.scope = signbleu::ChannelScope::Manual;
    } else {
      throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                            "scope must be \"all\" or \"manual\"", scope);
    }
  }
  if (j.contains("manual_channels")) {
    for (const auto& c : j["manual_channels"]) {
      cfg.manual_channels.push_back(c.get<std::string>());
    }
  }
  if (j.contains("smoothing")) {
    const std::string smoothing = j["smoothing"].get<std::string>();
    if (smoothing == "exp") {
      cfg.smoothing = signbleu::Smoothing::Exp;
    } else if (smoothing == "none") {
      cfg.smoothing = signbleu::Smoothing::None;
    } else {
      throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                            "smoothing must be \"exp\" or \"none\"", smoothing);
    }
  }
  cfg.effective_order = j.value("effective_order", cfg.effective_order);
  cfg.version = j.value("version", cfg.version);
  if (j.contains("weights")) {
    for (const auto& [key, value] : j["weights"].items()) {
      if (key.size() < 2 || (key[0] != 't' && key[0] != 'c')) {
        throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                              "weight keys look like \"t1\" or \"c2\"", key);
      }
      signbleu::OrderKey order_key;
      order_key.kind = key[0] == 't' ? signbleu::GramKind::Temporal
                                     : signbleu::GramKind::Channel;
      order_key.order = std::stoi(key.substr(1));
      cfg.weights[order_key] = value.get<double>();
    }
  }
  cfg.validate();
  return cfg;
}

json report_to_json(const signbleu::ScoreReport& report) {
  json j;
  j["signature"] = report.signature;
  j["score"] = report.score;
  j["brevity_penalty"] = report.brevity_penalty;
  j["hyp_length"] = report.hyp_length;
  j["ref_length"] = report.ref_length;
  j["precisions"] = json::array();
  for (const auto& order : report.orders) {
    j["precisions"].push_back(
        {{"order", signbleu::to_string(order.key)},
         {"numerator", order.numerator},
         {"denominator", order.denominator},
         {"precision", order.precision},
         {"smoothed", order.smoothed},
         {"excluded", order.excluded}});
  }
  return j;
}

}  // namespace

extern "C" {

const char* sb_version(void) { return "0.1.0"; }

const char* sb_status_name(sb_status status) {
  switch (status) {
    case SB_OK: return "SB_OK";
    case SB_ERROR_INVALID_ARGUMENT: return "SB_ERROR_INVALID_ARGUMENT";
    case SB_ERROR_CONFIG: return "SB_ERROR_CONFIG";
    case SB_ERROR_DATA: return "SB_ERROR_DATA";
    case SB_ERROR_SCHEMA: return "SB_ERROR_SCHEMA";
    case SB_ERROR_IO: return "SB_ERROR_IO";
    case SB_ERROR_DEGENERATE: return "SB_ERROR_DEGENERATE";
    case SB_ERROR_INTERNAL: return "SB_ERROR_INTERNAL";
  }
  return "SB_UNKNOWN";
}

const char* sb_last_error(void) { return g_last_error.c_str(); }

void sb_string_free(char* s) { delete[] s; }

sb_status sb_mapping_from_json(const char* json_text, sb_mapping** out) {
  if (json_text == nullptr || out == nullptr) {
    return invalid_argument("sb_mapping_from_json");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_mapping>();
    handle->value = signbleu::mapping_from_json(json_text);
    *out = handle.release();
  });
}

sb_status sb_mapping_to_json(const sb_mapping* mapping, char** json_out) {
  if (mapping == nullptr || json_out == nullptr) {
    return invalid_argument("sb_mapping_to_json");
  }
  return guarded([&] {
    *json_out = copy_string(signbleu::mapping_to_json(mapping->value));
  });
}

void sb_mapping_free(sb_mapping* mapping) { delete mapping; }

static void load_docset_from_json_text(const std::string& text,
                                       const std::string& base_dir,
                                       sb_docset& out) {
  const json j = json::parse(text, nullptr, false);
  if (!j.is_discarded() && j.is_object() && j.contains("documents")) {
    signbleu::CorpusManifest manifest = signbleu::corpus_from_json(text, base_dir);
    out.documents = std::move(manifest.documents);
    out.warnings = std::move(manifest.warnings);
    if (!manifest.mapping.channel_order.empty()) {
      out.mapping = std::move(manifest.mapping);
      out.has_mapping = true;
    }
    return;
  }
  out.documents.push_back(signbleu::document_from_json(text));
}

sb_status sb_docset_from_file(const char* path, sb_docset** out) {
  if (path == nullptr || out == nullptr) {
    return invalid_argument("sb_docset_from_file");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_docset>();
    const std::filesystem::path p(path);
    const std::string bytes = signbleu::read_file(path);
    if (p.extension() == ".eaf") {
      signbleu::EafParseResult parsed = signbleu::parse_eaf(bytes, p.stem().string());
      handle->documents.push_back(std::move(parsed.document));
      handle->warnings = std::move(parsed.warnings);
    } else {
      load_docset_from_json_text(bytes, p.parent_path().string(), *handle);
    }
    *out = handle.release();
  });
}

sb_status sb_docset_from_json(const char* json_text, sb_docset** out) {
  if (json_text == nullptr || out == nullptr) {
    return invalid_argument("sb_docset_from_json");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_docset>();
    load_docset_from_json_text(json_text, "", *handle);
    *out = handle.release();
  });
}

size_t sb_docset_size(const sb_docset* docs) {
  return docs == nullptr ? 0 : docs->documents.size();
}

sb_status sb_docset_mapping(const sb_docset* docs, sb_mapping** out) {
  if (docs == nullptr || out == nullptr) {
    return invalid_argument("sb_docset_mapping");
  }
  return guarded([&] {
    if (!docs->has_mapping) {
      throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                            "document set carries no mapping");
    }
    auto handle = std::make_unique<sb_mapping>();
    handle->value = docs->mapping;
    *out = handle.release();
  });
}

sb_status sb_docset_warnings(const sb_docset* docs, char** out) {
  if (docs == nullptr || out == nullptr) {
    return invalid_argument("sb_docset_warnings");
  }
  return guarded([&] {
    std::string joined;
    for (const auto& w : docs->warnings) {
      joined += w;
      joined += "\n";
    }
    *out = copy_string(joined);
  });
}

sb_status sb_docset_validate(const sb_docset* docs, const sb_mapping* mapping,
                             char** report_out) {
  if (docs == nullptr || mapping == nullptr || report_out == nullptr) {
    return invalid_argument("sb_docset_validate");
  }
  return guarded([&] {
    std::string report;
    for (const auto& doc : docs->documents) {
      for (const auto& violation :
           signbleu::validate_document(doc, mapping->value)) {
        report += doc.id;
        report += "\t";
        report += signbleu::violation_kind_name(violation.kind);
        report += "\t";
        report += violation.message;
        report += "\n";
      }
    }
    *report_out = copy_string(report);
  });
}

void sb_docset_free(sb_docset* docs) { delete docs; }

sb_status sb_docset_blockify(const sb_docset* docs, const sb_mapping* mapping,
                             sb_blockset** out) {
  if (docs == nullptr || mapping == nullptr || out == nullptr) {
    return invalid_argument("sb_docset_blockify");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_blockset>();
    for (const auto& doc : docs->documents) {
      const auto violations = signbleu::validate_document(doc, mapping->value);
      if (!violations.empty()) {
        std::ostringstream os;
        os << doc.id << ": " << signbleu::violation_kind_name(violations[0].kind)
           << ": " << violations[0].message;
        if (violations.size() > 1) {
          os << " (+" << violations.size() - 1 << " more)";
        }
        throw signbleu::Error(signbleu::ErrorCode::SchemaError,
                              "document fails validation", os.str());
      }
      handle->blocks.push_back(signbleu::blockify(doc, mapping->value));
    }
    *out = handle.release();
  });
}

sb_status sb_blockset_from_json(const char* json_text, sb_blockset** out) {
  if (json_text == nullptr || out == nullptr) {
    return invalid_argument("sb_blockset_from_json");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_blockset>();
    handle->blocks = signbleu::blocks_from_json(json_text);
    *out = handle.release();
  });
}

sb_status sb_blockset_to_json(const sb_blockset* blocks, char** json_out) {
  if (blocks == nullptr || json_out == nullptr) {
    return invalid_argument("sb_blockset_to_json");
  }
  return guarded([&] {
    *json_out = copy_string(signbleu::blocks_to_json(blocks->blocks));
  });
}

size_t sb_blockset_size(const sb_blockset* blocks) {
  return blocks == nullptr ? 0 : blocks->blocks.size();
}

void sb_blockset_free(sb_blockset* blocks) { delete blocks; }

sb_status sb_blockset_linearize(const sb_blockset* blocks,
                                const sb_mapping* mapping,
                                char** token_lines_out) {
  if (blocks == nullptr || mapping == nullptr || token_lines_out == nullptr) {
    return invalid_argument("sb_blockset_linearize");
  }
  return guarded([&] {
    std::vector<signbleu::TokenSequence> docs;
    docs.reserve(blocks->blocks.size());
    for (const auto& b : blocks->blocks) {
      docs.push_back(signbleu::linearize(b, mapping->value));
    }
    *token_lines_out = copy_string(signbleu::token_lines(docs));
  });
}

sb_status sb_delinearize(const char* token_lines, const sb_mapping* mapping,
                         sb_blockset** out) {
  if (token_lines == nullptr || mapping == nullptr || out == nullptr) {
    return invalid_argument("sb_delinearize");
  }
  return guarded([&] {
    auto handle = std::make_unique<sb_blockset>();
    for (const auto& tokens : signbleu::parse_token_lines(token_lines)) {
      handle->blocks.push_back(signbleu::delinearize(tokens, mapping->value));
    }
    *out = handle.release();
  });
}

sb_status sb_blockset_grams_json(const sb_blockset* blocks, int max_temporal,
                                 int max_channel, char** json_out) {
  if (blocks == nullptr || json_out == nullptr) {
    return invalid_argument("sb_blockset_grams_json");
  }
  return guarded([&] {
    json out = json::array();
    for (const auto& b : blocks->blocks) {
      json doc;
      if (!b.id.empty()) doc["id"] = b.id;
      doc["grams"] = json::array();
      auto dump = [&](const signbleu::GramMultiset& grams) {
        json entry;
        entry["kind"] = signbleu::gram_kind_name(grams.kind);
        entry["order"] = grams.order;
        entry["total"] = grams.total();
        entry["counts"] = json::array();
        for (const auto& [gram, count] : grams.counts) {
          json items = json::array();
          for (const auto& item : gram.items) {
            items.push_back({{"channel", item.channel}, {"gloss", item.gloss}});
          }
          entry["counts"].push_back({{"items", items}, {"count", count}});
        }
        doc["grams"].push_back(std::move(entry));
      };
      for (int n = 1; n <= max_temporal; ++n) {
        dump(signbleu::temporal_grams(b, n));
      }
      for (int n = 2; n <= max_channel; ++n) {
        dump(signbleu::channel_grams(b, n));
      }
      out.push_back(std::move(doc));
    }
    *json_out = copy_string(out.dump(2));
  });
}

sb_status sb_blockset_gram_stats_tsv(const sb_blockset* blocks, int max_temporal,
                                     int max_channel, char** tsv_out) {
  if (blocks == nullptr || tsv_out == nullptr) {
    return invalid_argument("sb_blockset_gram_stats_tsv");
  }
  return guarded([&] {
    std::ostringstream os;
    os << "order\tmean_grams_per_document\n";
    for (const auto& stat :
         signbleu::gram_statistics(blocks->blocks, max_temporal, max_channel)) {
      os << (stat.kind == signbleu::GramKind::Temporal ? "t" : "c") << stat.order
         << "\t" << stat.mean_per_document << "\n";
    }
    *tsv_out = copy_string(os.str());
  });
}

sb_status sb_score(const sb_blockset* hyp, const sb_blockset* const* refs,
                   size_t ref_count, const char* config_json,
                   char** report_json_out) {
  if (hyp == nullptr || refs == nullptr || ref_count == 0 ||
      report_json_out == nullptr) {
    return invalid_argument("sb_score");
  }
  return guarded([&] {
    const signbleu::ScoreConfig cfg = config_from_json(config_json);
    for (size_t r = 0; r < ref_count; ++r) {
      if (refs[r] == nullptr) {
        throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                              "null reference set");
      }
      if (refs[r]->blocks.size() != hyp->blocks.size()) {
        throw signbleu::Error(
            signbleu::ErrorCode::InvalidConfig,
            "hypothesis and reference sets differ in segment count");
      }
    }
    std::vector<std::pair<signbleu::BlockMatrix, std::vector<signbleu::BlockMatrix>>>
        pairs;
    pairs.reserve(hyp->blocks.size());
    for (size_t i = 0; i < hyp->blocks.size(); ++i) {
      std::vector<signbleu::BlockMatrix> segment_refs;
      segment_refs.reserve(ref_count);
      for (size_t r = 0; r < ref_count; ++r) {
        segment_refs.push_back(refs[r]->blocks[i]);
      }
      pairs.push_back({hyp->blocks[i], std::move(segment_refs)});
    }
    const signbleu::ScoreReport report = signbleu::corpus_sign_bleu(pairs, cfg);
    *report_json_out = copy_string(report_to_json(report).dump(2));
  });
}

sb_status sb_signature(const char* config_json, char** signature_out) {
  if (signature_out == nullptr) return invalid_argument("sb_signature");
  return guarded([&] {
    const signbleu::ScoreConfig cfg = config_from_json(config_json);
    *signature_out = copy_string(signbleu::signature(cfg));
  });
}

sb_status sb_simulate(const sb_docset* corpus, const sb_mapping* mapping,
                      uint64_t runs, uint64_t sample_size, uint64_t seed,
                      int max_temporal, int max_channel,
                      const char* extra_columns_tsv, char** score_table_tsv_out,
                      char** correlation_tsv_out) {
  if (corpus == nullptr || mapping == nullptr || correlation_tsv_out == nullptr) {
    return invalid_argument("sb_simulate");
  }
  return guarded([&] {
    std::vector<signbleu::PairedDocument> paired;
    paired.reserve(corpus->documents.size());
    for (const auto& doc : corpus->documents) {
      if (doc.source_text.empty()) {
        throw signbleu::Error(signbleu::ErrorCode::InvalidConfig,
                              "simulation corpus document lacks text", doc.id);
      }
      signbleu::PairedDocument p;
      p.sign = doc;
      std::istringstream is(doc.source_text);
      std::string token;
      while (is >> token) p.text_tokens.push_back(token);
      paired.push_back(std::move(p));
    }
    signbleu::SimulationConfig cfg;
    cfg.runs = runs;
    cfg.sample_size = sample_size;
    cfg.seed = seed;
    cfg.metric_grid =
        signbleu::default_metric_grid(mapping->value, max_temporal, max_channel);
    signbleu::ScoreTable table =
        signbleu::simulate_systems(paired, mapping->value, cfg);
    if (extra_columns_tsv != nullptr && *extra_columns_tsv != '\0') {
      signbleu::merge_extra_columns(table, extra_columns_tsv);
    }
    if (score_table_tsv_out != nullptr) {
      *score_table_tsv_out = copy_string(signbleu::score_table_tsv(table));
    }
    *correlation_tsv_out =
        copy_string(signbleu::correlation_report_tsv(signbleu::correlation_report(table)));
  });
}

}  // extern "C"

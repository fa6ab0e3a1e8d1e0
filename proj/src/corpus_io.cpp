#include "signbleu/corpus_io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace signbleu {

namespace pt = boost::property_tree;
using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message, const std::string& path) {
  throw Error(ErrorCode::SchemaError, message, path);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) schema_error("not valid JSON", what);
  return j;
}

std::string require_string(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_string()) {
    schema_error(std::string("expected string field \"") + key + "\"", path);
  }
  return j[key].get<std::string>();
}

std::int64_t require_int(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    schema_error(std::string("expected integer field \"") + key + "\"", path);
  }
  return j[key].get<std::int64_t>();
}

GlossAnnotation annotation_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error("annotation must be an object", path);
  GlossAnnotation a;
  a.tier = require_string(j, "tier", path);
  a.start_ms = require_int(j, "start_ms", path);
  a.end_ms = require_int(j, "end_ms", path);
  a.gloss = require_string(j, "gloss", path);
  if (a.start_ms < 0) schema_error("start_ms must be non-negative", path);
  if (a.start_ms >= a.end_ms) schema_error("start_ms must be before end_ms", path);
  if (!is_valid_gloss(a.gloss)) {
    schema_error("gloss is empty, has whitespace, or has a leading/trailing ':'",
                 path + ".gloss");
  }
  return a;
}

TimeAlignedDocument document_from_json_value(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error("document must be an object", path);
  TimeAlignedDocument doc;
  doc.id = require_string(j, "id", path);
  if (j.contains("text")) {
    if (!j["text"].is_string()) schema_error("\"text\" must be a string", path);
    doc.source_text = j["text"].get<std::string>();
  }
  if (!j.contains("annotations") || !j["annotations"].is_array()) {
    schema_error("expected array field \"annotations\"", path);
  }
  std::size_t i = 0;
  for (const auto& item : j["annotations"]) {
    doc.annotations.push_back(
        annotation_from_json(item, path + ".annotations[" + std::to_string(i) + "]"));
    ++i;
  }
  doc.normalize();
  return doc;
}

json document_to_json_value(const TimeAlignedDocument& doc) {
  json j;
  j["id"] = doc.id;
  if (!doc.source_text.empty()) j["text"] = doc.source_text;
  j["annotations"] = json::array();
  for (const auto& a : doc.annotations) {
    j["annotations"].push_back({{"tier", a.tier},
                                {"start_ms", a.start_ms},
                                {"end_ms", a.end_ms},
                                {"gloss", a.gloss}});
  }
  return j;
}

ChannelMapping mapping_from_json_value(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error("mapping must be an object", path);
  ChannelMapping m;
  if (!j.contains("tiers") || !j["tiers"].is_object()) {
    schema_error("expected object field \"tiers\"", path);
  }
  for (const auto& [tier, channels] : j["tiers"].items()) {
    std::vector<std::string> targets;
    if (channels.is_string()) {
      targets.push_back(channels.get<std::string>());
    } else if (channels.is_array()) {
      for (const auto& c : channels) {
        if (!c.is_string()) schema_error("channel names must be strings",
                                         path + ".tiers." + tier);
        targets.push_back(c.get<std::string>());
      }
    } else {
      schema_error("tier entry must be a channel name or a list",
                   path + ".tiers." + tier);
    }
    m.entries.push_back({tier, std::move(targets)});
  }
  if (!j.contains("order") || !j["order"].is_array()) {
    schema_error("expected array field \"order\"", path);
  }
  for (const auto& c : j["order"]) {
    if (!c.is_string()) schema_error("\"order\" entries must be strings", path);
    m.channel_order.push_back(c.get<std::string>());
  }
  if (j.contains("manual")) {
    for (const auto& c : j["manual"]) {
      if (!c.is_string()) schema_error("\"manual\" entries must be strings", path);
      m.manual_channels.push_back(c.get<std::string>());
    }
  }
  if (j.contains("dominant")) m.dominant_channel = require_string(j, "dominant", path);
  if (j.contains("non_dominant")) {
    m.non_dominant_channel = require_string(j, "non_dominant", path);
  }
  try {
    m.validate();
  } catch (const Error& e) {
    schema_error(e.what(), path);
  }
  return m;
}

json mapping_to_json_value(const ChannelMapping& m) {
  json tiers = json::object();
  for (const auto& [tier, channels] : m.entries) tiers[tier] = channels;
  json j;
  j["tiers"] = tiers;
  j["order"] = m.channel_order;
  j["manual"] = m.manual_channels;
  if (!m.dominant_channel.empty()) j["dominant"] = m.dominant_channel;
  if (!m.non_dominant_channel.empty()) j["non_dominant"] = m.non_dominant_channel;
  return j;
}

}  // namespace

EafParseResult parse_eaf(const std::string& xml, const std::string& document_id) {
  pt::ptree tree;
  std::istringstream is(xml);
  try {
    pt::read_xml(is, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedXml, e.message());
  }

  const auto root = tree.get_child_optional("ANNOTATION_DOCUMENT");
  if (!root) {
    throw Error(ErrorCode::MalformedXml, "missing ANNOTATION_DOCUMENT element");
  }

  std::map<std::string, std::optional<std::int64_t>> slots;
  if (const auto time_order = root->get_child_optional("TIME_ORDER")) {
    for (const auto& [name, node] : *time_order) {
      if (name != "TIME_SLOT") continue;
      const auto id = node.get_optional<std::string>("<xmlattr>.TIME_SLOT_ID");
      if (!id) throw Error(ErrorCode::MalformedXml, "TIME_SLOT without TIME_SLOT_ID");
      std::optional<std::int64_t> value;
      if (const auto v = node.get_optional<std::int64_t>("<xmlattr>.TIME_VALUE")) {
        value = *v;
      }
      slots[*id] = value;
    }
  }

  auto resolve = [&](const std::string& ref, const std::string& where) {
    auto it = slots.find(ref);
    if (it == slots.end()) {
      throw Error(ErrorCode::DanglingSlotRef, "annotation references unknown slot",
                  where + " -> " + ref);
    }
    if (!it->second.has_value()) {
      throw Error(ErrorCode::MissingTimeValue,
                  "referenced time slot has no TIME_VALUE", where + " -> " + ref);
    }
    return *it->second;
  };

  EafParseResult result;
  result.document.id = document_id;
  for (const auto& [name, tier_node] : *root) {
    if (name != "TIER") continue;
    const std::string tier_id =
        tier_node.get<std::string>("<xmlattr>.TIER_ID", "");
    if (tier_id.empty()) {
      throw Error(ErrorCode::MalformedXml, "TIER without TIER_ID");
    }
    bool warned_symbolic = false;
    for (const auto& [child_name, annotation_node] : tier_node) {
      if (child_name != "ANNOTATION") continue;
      if (annotation_node.get_child_optional("REF_ANNOTATION")) {
        if (!warned_symbolic) {
          result.warnings.push_back("tier " + tier_id +
                                    ": symbolic annotations skipped");
          warned_symbolic = true;
        }
        continue;
      }
      const auto alignable = annotation_node.get_child_optional("ALIGNABLE_ANNOTATION");
      if (!alignable) continue;
      const std::string ref1 =
          alignable->get<std::string>("<xmlattr>.TIME_SLOT_REF1", "");
      const std::string ref2 =
          alignable->get<std::string>("<xmlattr>.TIME_SLOT_REF2", "");
      if (ref1.empty() || ref2.empty()) {
        throw Error(ErrorCode::MalformedXml,
                    "ALIGNABLE_ANNOTATION without time slot refs", tier_id);
      }
      std::string value = alignable->get<std::string>("ANNOTATION_VALUE", "");
      // ELAN pads values with layout whitespace; trim before validating.
      const auto first = value.find_first_not_of(" \t\r\n");
      const auto last = value.find_last_not_of(" \t\r\n");
      value = first == std::string::npos ? "" : value.substr(first, last - first + 1);
      if (value.empty()) {
        result.warnings.push_back("tier " + tier_id + ": empty annotation skipped");
        continue;
      }
      GlossAnnotation a;
      a.tier = tier_id;
      a.start_ms = resolve(ref1, tier_id);
      a.end_ms = resolve(ref2, tier_id);
      a.gloss = value;
      if (a.start_ms >= a.end_ms) {
        schema_error("annotation has start >= end", tier_id + ": " + value);
      }
      if (!is_valid_gloss(a.gloss)) {
        schema_error("gloss is empty, has whitespace, or has a leading/trailing ':'",
                     tier_id + ": " + value);
      }
      result.document.annotations.push_back(std::move(a));
    }
  }
  result.document.normalize();
  return result;
}

ChannelMapping mapping_from_json(const std::string& text) {
  const json j = parse_json(text, "mapping");
  // Accept either a bare mapping object or a manifest-style wrapper.
  if (j.is_object() && j.contains("mapping")) {
    return mapping_from_json_value(j["mapping"], "mapping");
  }
  return mapping_from_json_value(j, "mapping");
}

std::string mapping_to_json(const ChannelMapping& mapping) {
  return mapping_to_json_value(mapping).dump(2);
}

TimeAlignedDocument document_from_json(const std::string& text) {
  return document_from_json_value(parse_json(text, "document"), "document");
}

std::string document_to_json(const TimeAlignedDocument& doc) {
  return document_to_json_value(doc).dump(2);
}

CorpusManifest corpus_from_json(const std::string& text, const std::string& base_dir) {
  const json j = parse_json(text, "corpus");
  if (!j.is_object()) schema_error("corpus must be an object", "corpus");
  CorpusManifest corpus;
  if (j.contains("mapping")) {
    corpus.mapping = mapping_from_json_value(j["mapping"], "corpus.mapping");
  }
  if (!j.contains("documents") || !j["documents"].is_array()) {
    schema_error("expected array field \"documents\"", "corpus");
  }
  std::size_t i = 0;
  std::map<std::string, bool> seen_ids;
  for (const auto& entry : j["documents"]) {
    const std::string path = "corpus.documents[" + std::to_string(i) + "]";
    TimeAlignedDocument doc;
    if (entry.is_object() && entry.contains("path")) {
      const std::string id = require_string(entry, "id", path);
      const std::string file = require_string(entry, "path", path);
      std::filesystem::path p(file);
      if (p.is_relative() && !base_dir.empty()) {
        p = std::filesystem::path(base_dir) / p;
      }
      const std::string bytes = read_file(p.string());
      if (p.extension() == ".eaf") {
        EafParseResult parsed = parse_eaf(bytes, id);
        doc = std::move(parsed.document);
        for (auto& w : parsed.warnings) corpus.warnings.push_back(id + ": " + w);
      } else {
        doc = document_from_json_value(parse_json(bytes, path), path);
        doc.id = id;
      }
      if (entry.contains("text")) doc.source_text = entry["text"].get<std::string>();
    } else {
      doc = document_from_json_value(entry, path);
    }
    if (seen_ids[doc.id]) schema_error("duplicate document id: " + doc.id, path);
    seen_ids[doc.id] = true;
    corpus.documents.push_back(std::move(doc));
    ++i;
  }
  return corpus;
}

std::string corpus_to_json(const CorpusManifest& corpus) {
  json j;
  j["mapping"] = mapping_to_json_value(corpus.mapping);
  j["documents"] = json::array();
  for (const auto& doc : corpus.documents) {
    j["documents"].push_back(document_to_json_value(doc));
  }
  return j.dump(2);
}

namespace {

json block_to_json_value(const BlockMatrix& b) {
  json j;
  if (!b.id.empty()) j["id"] = b.id;
  j["channels"] = b.channels;
  j["columns"] = json::array();
  for (const auto& column : b.columns) {
    json col = json::array();
    for (const auto& cell : column) {
      if (cell.is_null()) {
        col.push_back(nullptr);
      } else {
        col.push_back({{"gloss", cell.gloss},
                       {"cont_prev", cell.cont_prev},
                       {"cont_next", cell.cont_next}});
      }
    }
    j["columns"].push_back(std::move(col));
  }
  return j;
}

BlockMatrix block_from_json_value(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error("block matrix must be an object", path);
  BlockMatrix b;
  if (j.contains("id")) b.id = require_string(j, "id", path);
  if (!j.contains("channels") || !j["channels"].is_array()) {
    schema_error("expected array field \"channels\"", path);
  }
  for (const auto& c : j["channels"]) {
    if (!c.is_string()) schema_error("\"channels\" entries must be strings", path);
    b.channels.push_back(c.get<std::string>());
  }
  if (!j.contains("columns") || !j["columns"].is_array()) {
    schema_error("expected array field \"columns\"", path);
  }
  std::size_t cj = 0;
  for (const auto& column : j["columns"]) {
    const std::string cpath = path + ".columns[" + std::to_string(cj) + "]";
    if (!column.is_array() || column.size() != b.channels.size()) {
      schema_error("column must list one cell per channel", cpath);
    }
    std::vector<BlockCell> cells;
    bool all_null = true;
    for (const auto& cell : column) {
      if (cell.is_null()) {
        cells.push_back({});
        continue;
      }
      if (!cell.is_object()) schema_error("cell must be null or an object", cpath);
      BlockCell c;
      c.gloss = require_string(cell, "gloss", cpath);
      c.cont_prev = cell.value("cont_prev", false);
      c.cont_next = cell.value("cont_next", false);
      if (!is_valid_gloss(c.gloss)) schema_error("bad gloss in cell", cpath);
      cells.push_back(std::move(c));
      all_null = false;
    }
    if (all_null) schema_error("column is entirely null", cpath);
    b.columns.push_back(std::move(cells));
    ++cj;
  }

  // Continuation flags must describe real neighbors.
  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    for (std::size_t col = 0; col < b.columns.size(); ++col) {
      const BlockCell& cell = b.columns[col][row];
      if (cell.is_null()) continue;
      if (cell.cont_next) {
        const bool ok = col + 1 < b.columns.size() &&
                        !b.columns[col + 1][row].is_null() &&
                        b.columns[col + 1][row].gloss == cell.gloss &&
                        b.columns[col + 1][row].cont_prev;
        if (!ok) {
          schema_error("cont_next without a matching continuation cell",
                       path + ".columns[" + std::to_string(col) + "]");
        }
      }
      if (cell.cont_prev) {
        const bool ok = col > 0 && !b.columns[col - 1][row].is_null() &&
                        b.columns[col - 1][row].gloss == cell.gloss &&
                        b.columns[col - 1][row].cont_next;
        if (!ok) {
          schema_error("cont_prev without a matching continuation cell",
                       path + ".columns[" + std::to_string(col) + "]");
        }
      }
    }
  }
  return b;
}

}  // namespace

std::string blocks_to_json(const std::vector<BlockMatrix>& blocks) {
  json j = json::array();
  for (const auto& b : blocks) j.push_back(block_to_json_value(b));
  return j.dump(2);
}

std::vector<BlockMatrix> blocks_from_json(const std::string& text) {
  const json j = parse_json(text, "blocks");
  std::vector<BlockMatrix> out;
  if (j.is_object()) {
    out.push_back(block_from_json_value(j, "blocks"));
    return out;
  }
  if (!j.is_array()) schema_error("expected a block matrix or a list", "blocks");
  std::size_t i = 0;
  for (const auto& item : j) {
    out.push_back(block_from_json_value(item, "blocks[" + std::to_string(i) + "]"));
    ++i;
  }
  return out;
}

std::string token_lines(const std::vector<TokenSequence>& docs) {
  std::string out;
  for (const auto& tokens : docs) {
    out += format_tokens(tokens);
    out += "\n";
  }
  return out;
}

std::vector<TokenSequence> parse_token_lines(const std::string& text) {
  std::vector<TokenSequence> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(parse_tokens(line));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open file", path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write file", path);
  out << content;
}

}  // namespace signbleu

#pragma once

#include <string>
#include <vector>

#include "signbleu/annotation.hpp"
#include "signbleu/block.hpp"
#include "signbleu/linearize.hpp"

namespace signbleu {

struct EafParseResult {
  TimeAlignedDocument document;
  std::vector<std::string> warnings;  // skipped symbolic tiers, empty values
};

/// Reads the time-alignable subset of an ELAN .eaf file: TIME_ORDER slots
/// and each tier's ALIGNABLE_ANNOTATIONs. Symbolic (REF_ANNOTATION) tiers
/// are skipped with a warning. A referenced slot without a TIME_VALUE is a
/// hard error (MISSING_TIME_VALUE); an unknown slot id is DANGLING_SLOT_REF.
EafParseResult parse_eaf(const std::string& xml, const std::string& document_id);

/// JSON interchange schema. A document is
///   { "id": str, "text"?: str,
///     "annotations": [ {"tier": str, "start_ms": int, "end_ms": int,
///                       "gloss": str} ] }
/// and a corpus manifest is
///   { "mapping": { "tiers": {tier: [channel, ...]}, "order": [...],
///                  "manual": [...], "dominant": str, "non_dominant": str },
///     "documents": [ document | {"id": str, "path": str, "text"?: str} ] }
/// Manifest entries either inline their annotations or point at an .eaf or
/// document-JSON file (relative paths resolve against `base_dir`).
struct CorpusManifest {
  ChannelMapping mapping;
  std::vector<TimeAlignedDocument> documents;
  std::vector<std::string> warnings;
};

ChannelMapping mapping_from_json(const std::string& json);
std::string mapping_to_json(const ChannelMapping& mapping);

TimeAlignedDocument document_from_json(const std::string& json);
std::string document_to_json(const TimeAlignedDocument& doc);

CorpusManifest corpus_from_json(const std::string& json,
                                const std::string& base_dir = "");
std::string corpus_to_json(const CorpusManifest& corpus);

/// Lossless block serialization. Cells are null or
/// {"gloss": str, "cont_prev": bool, "cont_next": bool}; continuation is
/// structural, so glosses with interior colons ("date:10") survive.
std::string blocks_to_json(const std::vector<BlockMatrix>& blocks);
std::vector<BlockMatrix> blocks_from_json(const std::string& json);

/// Token text: one document per line, tokens separated by single spaces.
std::string token_lines(const std::vector<TokenSequence>& docs);
std::vector<TokenSequence> parse_token_lines(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace signbleu

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signbleu/error.hpp"

namespace signbleu {

/// One time-aligned gloss on one annotation tier. Times are integer
/// milliseconds; intervals are half-open [start_ms, end_ms).
struct GlossAnnotation {
  std::string tier;
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  std::string gloss;

  friend bool operator==(const GlossAnnotation&, const GlossAnnotation&) = default;
};

/// True when `gloss` is usable as a gloss label: non-empty, no whitespace,
/// and no leading/trailing ':' (those positions are reserved for
/// continuation markers; interior colons like "date:8" are fine).
bool is_valid_gloss(const std::string& gloss);

/// A document of gloss annotations, kept sorted by (start_ms, tier).
struct TimeAlignedDocument {
  std::string id;
  std::vector<GlossAnnotation> annotations;
  std::string source_text;

  /// Restores the (start_ms, tier, end_ms, gloss) sort order.
  void normalize();

  friend bool operator==(const TimeAlignedDocument&, const TimeAlignedDocument&) = default;
};

/// Tier-to-channel routing plus the fixed channel order. A tier may fan out
/// to several channels (a "both hands" tier feeding the dominant and
/// non-dominant channels). The map must be surjective onto channel_order.
struct ChannelMapping {
  std::vector<std::pair<std::string, std::vector<std::string>>> entries;
  std::vector<std::string> channel_order;
  std::vector<std::string> manual_channels;
  std::string dominant_channel;
  std::string non_dominant_channel;

  /// Channels for `tier`, or nullptr when the tier is unmapped.
  const std::vector<std::string>* channels_for(const std::string& tier) const;

  bool is_channel(const std::string& channel) const;
  bool is_manual(const std::string& channel) const;
  int channel_index(const std::string& channel) const;  // -1 when absent

  /// Throws Error(InvalidConfig) when a structural invariant is broken:
  /// unknown target channels, dominant/non-dominant not distinct manual
  /// channels, or channels that no tier feeds.
  void validate() const;
};

enum class ViolationKind {
  UnmappedTier,
  OverlapInTier,
  OverlapInChannel,
  BadGloss,
  BadInterval,
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Checks a document against a mapping. Violations are data, not failures:
/// an empty report means every annotation is mapped, intervals are
/// well-formed, and no two annotations routed to one channel overlap.
std::vector<Violation> validate_document(const TimeAlignedDocument& doc,
                                         const ChannelMapping& mapping);

/// Sorted, de-duplicated union of all annotation start and end times.
std::vector<std::int64_t> boundary_times(const TimeAlignedDocument& doc);

}  // namespace signbleu

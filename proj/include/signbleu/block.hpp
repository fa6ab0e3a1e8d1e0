#pragma once

#include <string>
#include <vector>

#include "signbleu/annotation.hpp"

namespace signbleu {

/// One cell of a block matrix. A null cell has an empty gloss and both
/// continuation flags false. The flags are structural: serialized forms may
/// print them as ':' prefixes/suffixes, but gloss names keep interior colons
/// ("date:8") untouched.
struct BlockCell {
  std::string gloss;
  bool cont_prev = false;
  bool cont_next = false;

  bool is_null() const { return gloss.empty(); }

  friend bool operator==(const BlockCell&, const BlockCell&) = default;
};

/// Gloss-valued channel x segment matrix. Every column corresponds to one
/// maximal segment of uninterrupted signing and holds one cell per channel;
/// all-null columns are never stored.
struct BlockMatrix {
  std::string id;
  std::vector<std::string> channels;
  std::vector<std::vector<BlockCell>> columns;  // columns[j][channel_index]

  std::size_t channel_count() const { return channels.size(); }
  std::size_t column_count() const { return columns.size(); }
  int channel_index(const std::string& channel) const;  // -1 when absent

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;
};

/// Converts a valid document into its block matrix: segments the timeline at
/// annotation boundaries, fills each non-empty segment with the covering
/// glosses, and marks continuation into neighboring segments.
///
/// Throws Error(UnmappedTier) for annotations on unmapped tiers and
/// Error(ChannelCollision) when two annotations claim one (channel, segment)
/// cell; silent overwrite would corrupt scores.
BlockMatrix blockify(const TimeAlignedDocument& doc, const ChannelMapping& mapping);

/// Number of annotations the matrix holds: non-null cells that do not
/// continue from the previous column.
long long annotation_count(const BlockMatrix& b);

/// Same count restricted to a subset of channels.
long long annotation_count(const BlockMatrix& b,
                           const std::vector<std::string>& channels);

/// Keeps only the given rows (in the matrix's existing order), then drops
/// columns that became all-null. Throws Error(UnknownChannel) when a
/// requested channel is not a row of `b`.
BlockMatrix restrict_channels(const BlockMatrix& b,
                              const std::vector<std::string>& channels);

/// Per-channel gloss sequences with continuation runs merged; the inverse
/// view used by gram extraction and round-trip checks.
std::vector<std::vector<std::string>> channel_sequences(const BlockMatrix& b);

/// Display-only rendering in the ':'-marked tabular style ("snow1:",
/// ":snow1"). Not parseable: interior colons are not escaped.
std::string render_marked(const BlockMatrix& b);

}  // namespace signbleu

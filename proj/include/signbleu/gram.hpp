#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "signbleu/block.hpp"

namespace signbleu {

enum class GramKind { Temporal, Channel };

const char* gram_kind_name(GramKind kind);

/// One gram member: a channel-qualified gloss ("right" + "snow1"). `span`
/// is 0 under the default merged-gloss identity; the span-sensitive identity
/// stores the number of columns the gloss covers, which makes matching
/// distinguish e.g. a two-column "snow1" from a one-column one.
struct GramItem {
  std::string channel;
  std::string gloss;
  int span = 0;

  auto operator<=>(const GramItem&) const = default;
};

/// A temporal gram (ordered, single channel) or channel gram (unordered,
/// distinct channels; items kept sorted so equal sets compare equal).
struct Gram {
  GramKind kind = GramKind::Temporal;
  std::vector<GramItem> items;

  int order() const { return static_cast<int>(items.size()); }
  auto operator<=>(const Gram&) const = default;
};

std::string to_string(const Gram& gram);

/// Multiset of grams of one (kind, order). The ordered map keeps iteration
/// deterministic for serialization and corpus sums.
struct GramMultiset {
  GramKind kind = GramKind::Temporal;
  int order = 1;
  std::map<Gram, long long> counts;

  long long total() const;
  void add(Gram gram, long long count = 1);
};

/// Whether temporal gram elements are the merged glosses alone, or carry the
/// column span each gloss covers. MergedGloss is the documented behavior;
/// GlossSpan exists to study the stricter matching that reproduces historic
/// precision figures (see tests).
enum class TemporalIdentity { MergedGloss, GlossSpan };

/// All length-n windows of each channel's merged gloss sequence (nulls
/// skipped, continued glosses counted once), pooled across channels with
/// multiplicity. Orders longer than every channel sequence yield an empty
/// multiset. Requires n >= 1.
GramMultiset temporal_grams(const BlockMatrix& b, int n,
                            TemporalIdentity identity = TemporalIdentity::MergedGloss);

/// All n-element subsets of the non-null cells of each column (markers
/// stripped), pooled across columns with multiplicity. A gloss spanning k
/// columns takes part in each of those k columns. Requires n >= 2: order-1
/// channel grams duplicate temporal unigrams and are excluded.
GramMultiset channel_grams(const BlockMatrix& b, int n);

struct GramOrderStat {
  GramKind kind;
  int order;
  double mean_per_document;
};

/// Arithmetic mean of gram multiset totals per document, for temporal orders
/// 1..max_temporal and channel orders 2..max_channel.
std::vector<GramOrderStat> gram_statistics(const std::vector<BlockMatrix>& corpus,
                                           int max_temporal, int max_channel);

}  // namespace signbleu

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "signbleu/gram.hpp"

namespace signbleu {

struct OrderKey {
  GramKind kind = GramKind::Temporal;
  int order = 1;

  auto operator<=>(const OrderKey&) const = default;
};

std::string to_string(const OrderKey& key);  // "t1", "c2", ...

enum class ChannelScope { All, Manual };
enum class Smoothing { Exp, None };

struct ScoreConfig {
  int max_temporal = 3;
  /// Highest channel-gram order. 1 means "no channel-gram terms": the
  /// composite's channel sum starts at order 2.
  int max_channel = 2;
  /// Weight per included order. Empty means uniform. When set, keys must be
  /// exactly {t1..t_max} plus {c2..c_max} and sum to 1 within 1e-12.
  std::map<OrderKey, double> weights;
  ChannelScope scope = ChannelScope::All;
  /// Channels the Manual scope restricts to; ignored for scope All.
  std::vector<std::string> manual_channels;
  Smoothing smoothing = Smoothing::Exp;
  /// false: an order with no hypothesis grams at all forces score 0.
  /// true: such orders are dropped and the remaining weights renormalized.
  bool effective_order = false;
  std::string version = "0.1.0";

  /// Included orders in the fixed visiting sequence t1..t_max, c2..c_max.
  std::vector<OrderKey> order_sequence() const;
  /// Resolved per-order weights (uniform when `weights` is empty).
  std::map<OrderKey, double> resolved_weights() const;
  /// Throws Error(InvalidConfig) on bad orders or weights.
  void validate() const;
};

/// Configuration string in the reproducibility-signature grammar:
/// "off:na||t:<nt>|c:<nc>|dim:1||m:sbleu|sm:<exp|none>|eff:<y|n>||v:<version>"
std::string signature(const ScoreConfig& cfg);

struct ClippedCount {
  long long numerator = 0;
  long long denominator = 0;
};

/// Clipped matches of a hypothesis multiset against references of the same
/// (kind, order): denominator is the total hypothesis multiplicity, the
/// numerator clips each gram's count at its maximum count over references.
ClippedCount clipped_matches(const GramMultiset& hyp,
                             const std::vector<GramMultiset>& refs);

/// Extracts grams from both sides and clips. Reference matrices must come
/// from blockified annotation data, never lifted from linearized text;
/// lifting loses overlap structure and inflates scores.
ClippedCount modified_precision(const BlockMatrix& hyp,
                                const std::vector<BlockMatrix>& refs,
                                GramKind kind, int order);

/// e^(1-|r|/|h|) for |h| <= |r|, else 1, with |r| the reference count
/// closest to |h| (ties resolved toward the smaller reference). |h| = 0
/// against a non-empty reference gives 0.
double brevity_penalty(long long hyp_count, const std::vector<long long>& ref_counts);

/// Closest reference count to `hyp_count` (tie -> smaller).
long long closest_ref_count(long long hyp_count,
                            const std::vector<long long>& ref_counts);

struct OrderScore {
  OrderKey key;
  long long numerator = 0;
  long long denominator = 0;
  /// Raw precision (0 when the denominator is 0).
  double precision = 0.0;
  /// Value entering the composite after smoothing.
  double smoothed = 0.0;
  /// Dropped from the composite (zero-denominator order under
  /// effective_order).
  bool excluded = false;
};

struct ScoreReport {
  std::vector<OrderScore> orders;
  double brevity_penalty = 1.0;
  long long hyp_length = 0;
  long long ref_length = 0;
  double score = 0.0;
  std::string signature;

  /// score recomputed from the stored precisions and BP; equal to `score`
  /// within 1e-12 by construction.
  double recompute(const ScoreConfig& cfg) const;
};

/// exp(sum w_i * log p_i); 0 when any weighted precision is 0.
double composite(const std::vector<double>& precisions,
                 const std::vector<double>& weights);

/// Segment-level score of one hypothesis against its references.
ScoreReport sign_bleu(const BlockMatrix& hyp, const std::vector<BlockMatrix>& refs,
                      const ScoreConfig& cfg);

/// Corpus-level score: per-order numerators and denominators are summed over
/// all segments before dividing, and the brevity penalty uses the summed
/// hypothesis count against the sum of per-segment closest reference counts.
ScoreReport corpus_sign_bleu(
    const std::vector<std::pair<BlockMatrix, std::vector<BlockMatrix>>>& pairs,
    const ScoreConfig& cfg);

}  // namespace signbleu

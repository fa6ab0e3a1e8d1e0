#include "signbleu/score.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace signbleu {

std::string to_string(const OrderKey& key) {
  std::ostringstream os;
  os << (key.kind == GramKind::Temporal ? "t" : "c") << key.order;
  return os.str();
}

std::vector<OrderKey> ScoreConfig::order_sequence() const {
  std::vector<OrderKey> keys;
  for (int n = 1; n <= max_temporal; ++n) keys.push_back({GramKind::Temporal, n});
  for (int n = 2; n <= max_channel; ++n) keys.push_back({GramKind::Channel, n});
  return keys;
}

std::map<OrderKey, double> ScoreConfig::resolved_weights() const {
  const std::vector<OrderKey> keys = order_sequence();
  std::map<OrderKey, double> out;
  if (weights.empty()) {
    const double w = 1.0 / static_cast<double>(keys.size());
    for (const OrderKey& key : keys) out[key] = w;
    return out;
  }
  return weights;
}

void ScoreConfig::validate() const {
  if (max_temporal < 1) {
    throw Error(ErrorCode::InvalidConfig, "max temporal order must be >= 1");
  }
  if (max_channel < 1) {
    throw Error(ErrorCode::InvalidConfig, "max channel order must be >= 1");
  }
  if (scope == ChannelScope::Manual && manual_channels.empty()) {
    throw Error(ErrorCode::InvalidConfig,
                "manual scope requires manual channels");
  }
  if (!weights.empty()) {
    const std::vector<OrderKey> keys = order_sequence();
    if (weights.size() != keys.size()) {
      throw Error(ErrorCode::InvalidConfig,
                  "weight keys must cover exactly the included orders");
    }
    double sum = 0.0;
    for (const OrderKey& key : keys) {
      auto it = weights.find(key);
      if (it == weights.end()) {
        throw Error(ErrorCode::InvalidConfig, "missing weight for order",
                    to_string(key));
      }
      if (it->second < 0.0) {
        throw Error(ErrorCode::InvalidConfig, "negative weight", to_string(key));
      }
      sum += it->second;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidConfig, "weights must sum to 1");
    }
  }
}

std::string signature(const ScoreConfig& cfg) {
  std::ostringstream os;
  os << "off:na"
     << "||t:" << cfg.max_temporal << "|c:" << cfg.max_channel << "|dim:1"
     << "||m:sbleu"
     << "|sm:" << (cfg.smoothing == Smoothing::Exp ? "exp" : "none")
     << "|eff:" << (cfg.effective_order ? "y" : "n")
     << "||v:" << cfg.version;
  return os.str();
}

ClippedCount clipped_matches(const GramMultiset& hyp,
                             const std::vector<GramMultiset>& refs) {
  for (const auto& ref : refs) {
    if (ref.kind != hyp.kind || ref.order != hyp.order) {
      throw Error(ErrorCode::InvalidConfig,
                  "clipping requires multisets of one (kind, order)");
    }
  }
  ClippedCount out;
  for (const auto& [gram, count] : hyp.counts) {
    out.denominator += count;
    long long best = 0;
    for (const auto& ref : refs) {
      auto it = ref.counts.find(gram);
      if (it != ref.counts.end()) best = std::max(best, it->second);
    }
    out.numerator += std::min(count, best);
  }
  return out;
}

namespace {

GramMultiset extract(const BlockMatrix& b, GramKind kind, int order) {
  return kind == GramKind::Temporal ? temporal_grams(b, order)
                                    : channel_grams(b, order);
}

}  // namespace

ClippedCount modified_precision(const BlockMatrix& hyp,
                                const std::vector<BlockMatrix>& refs,
                                GramKind kind, int order) {
  GramMultiset hyp_grams = extract(hyp, kind, order);
  std::vector<GramMultiset> ref_grams;
  ref_grams.reserve(refs.size());
  for (const auto& ref : refs) ref_grams.push_back(extract(ref, kind, order));
  return clipped_matches(hyp_grams, ref_grams);
}

long long closest_ref_count(long long hyp_count,
                            const std::vector<long long>& ref_counts) {
  if (ref_counts.empty()) {
    throw Error(ErrorCode::InvalidConfig, "need at least one reference");
  }
  long long best = ref_counts.front();
  for (std::size_t i = 1; i < ref_counts.size(); ++i) {
    const long long r = ref_counts[i];
    const long long d_best = std::llabs(best - hyp_count);
    const long long d_cur = std::llabs(r - hyp_count);
    if (d_cur < d_best || (d_cur == d_best && r < best)) best = r;
  }
  return best;
}

double brevity_penalty(long long hyp_count,
                       const std::vector<long long>& ref_counts) {
  const long long ref = closest_ref_count(hyp_count, ref_counts);
  if (hyp_count > ref) return 1.0;
  if (hyp_count == 0) return ref == 0 ? 1.0 : 0.0;
  return std::exp(1.0 - static_cast<double>(ref) / static_cast<double>(hyp_count));
}

double composite(const std::vector<double>& precisions,
                 const std::vector<double>& weights) {
  if (precisions.size() != weights.size()) {
    throw Error(ErrorCode::InvalidConfig,
                "precision and weight lists differ in length");
  }
  double log_sum = 0.0;
  for (std::size_t i = 0; i < precisions.size(); ++i) {
    if (weights[i] == 0.0) continue;
    if (precisions[i] <= 0.0) return 0.0;
    log_sum += weights[i] * std::log(precisions[i]);
  }
  return std::exp(log_sum);
}

namespace {

struct OrderCounts {
  OrderKey key;
  long long numerator = 0;
  long long denominator = 0;
};

ScoreReport combine(const std::vector<OrderCounts>& counts, long long hyp_length,
                    long long ref_length, const ScoreConfig& cfg) {
  ScoreReport report;
  report.hyp_length = hyp_length;
  report.ref_length = ref_length;
  report.signature = signature(cfg);
  report.brevity_penalty =
      brevity_penalty(hyp_length, std::vector<long long>{ref_length});

  bool any_nonempty = false;
  for (const auto& c : counts) any_nonempty = any_nonempty || c.denominator > 0;
  if (!any_nonempty) {
    throw Error(ErrorCode::AllOrdersEmpty,
                "every included order has zero hypothesis grams");
  }

  const std::map<OrderKey, double> weight_map = cfg.resolved_weights();

  // Exponential smoothing: each zero-numerator order with a nonzero
  // denominator doubles `smooth` and scores 1/(smooth * denominator).
  double smooth = 1.0;
  bool zero_denominator_seen = false;
  std::vector<double> precisions;
  std::vector<double> weights;
  double active_weight = 0.0;

  for (const auto& c : counts) {
    OrderScore entry;
    entry.key = c.key;
    entry.numerator = c.numerator;
    entry.denominator = c.denominator;
    if (c.denominator == 0) {
      entry.excluded = cfg.effective_order;
      zero_denominator_seen = true;
      report.orders.push_back(entry);
      continue;
    }
    entry.precision =
        static_cast<double>(c.numerator) / static_cast<double>(c.denominator);
    entry.smoothed = entry.precision;
    if (c.numerator == 0 && cfg.smoothing == Smoothing::Exp) {
      smooth *= 2.0;
      entry.smoothed = 1.0 / (smooth * static_cast<double>(c.denominator));
    }
    precisions.push_back(entry.smoothed);
    const double w = weight_map.at(c.key);
    weights.push_back(w);
    active_weight += w;
    report.orders.push_back(entry);
  }

  if (zero_denominator_seen && !cfg.effective_order) {
    report.score = 0.0;
    return report;
  }
  if (cfg.effective_order && active_weight > 0.0) {
    for (double& w : weights) w /= active_weight;
  }
  report.score = report.brevity_penalty * composite(precisions, weights);
  return report;
}

BlockMatrix scoped(const BlockMatrix& b, const ScoreConfig& cfg) {
  if (cfg.scope == ChannelScope::All) return b;
  std::vector<std::string> keep;
  for (const auto& channel : cfg.manual_channels) {
    if (b.channel_index(channel) >= 0) keep.push_back(channel);
  }
  if (keep.empty()) {
    throw Error(ErrorCode::NoManualChannels,
                "manual scope matches no channel of the matrix");
  }
  return restrict_channels(b, keep);
}

}  // namespace

double ScoreReport::recompute(const ScoreConfig& cfg) const {
  const std::map<OrderKey, double> weight_map = cfg.resolved_weights();
  std::vector<double> precisions;
  std::vector<double> weights;
  double active_weight = 0.0;
  for (const auto& entry : orders) {
    if (entry.denominator == 0) {
      if (!cfg.effective_order) return 0.0;
      continue;
    }
    precisions.push_back(entry.smoothed);
    const double w = weight_map.at(entry.key);
    weights.push_back(w);
    active_weight += w;
  }
  if (cfg.effective_order && active_weight > 0.0) {
    for (double& w : weights) w /= active_weight;
  }
  return brevity_penalty * composite(precisions, weights);
}

ScoreReport sign_bleu(const BlockMatrix& hyp, const std::vector<BlockMatrix>& refs,
                      const ScoreConfig& cfg) {
  return corpus_sign_bleu({{hyp, refs}}, cfg);
}

ScoreReport corpus_sign_bleu(
    const std::vector<std::pair<BlockMatrix, std::vector<BlockMatrix>>>& pairs,
    const ScoreConfig& cfg) {
  cfg.validate();
  if (pairs.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "no hypothesis/reference pairs");
  }

  const std::vector<OrderKey> keys = cfg.order_sequence();
  std::vector<OrderCounts> counts;
  counts.reserve(keys.size());
  for (const OrderKey& key : keys) counts.push_back({key, 0, 0});

  long long hyp_length = 0;
  long long ref_length = 0;

  for (const auto& [hyp_raw, refs_raw] : pairs) {
    if (refs_raw.empty()) {
      throw Error(ErrorCode::InvalidConfig, "pair has no reference");
    }
    const BlockMatrix hyp = scoped(hyp_raw, cfg);
    std::vector<BlockMatrix> refs;
    refs.reserve(refs_raw.size());
    for (const auto& ref : refs_raw) refs.push_back(scoped(ref, cfg));

    for (auto& c : counts) {
      const ClippedCount clip = modified_precision(hyp, refs, c.key.kind, c.key.order);
      c.numerator += clip.numerator;
      c.denominator += clip.denominator;
    }

    const long long h = annotation_count(hyp);
    std::vector<long long> ref_counts;
    ref_counts.reserve(refs.size());
    for (const auto& ref : refs) ref_counts.push_back(annotation_count(ref));
    hyp_length += h;
    ref_length += closest_ref_count(h, ref_counts);
  }

  return combine(counts, hyp_length, ref_length, cfg);
}

}  // namespace signbleu

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signbleu/corpus_io.hpp"
#include "signbleu/score.hpp"

namespace signbleu {

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one add and three
/// xor-shift-multiply steps per draw. Tiny, seedable, and identical on every
/// platform, which is what reproducible simulation runs need.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// First `k` entries of a Fisher-Yates shuffle of 0..n-1: a uniform sample
/// without replacement.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    Rng& rng);

/// Corpus BLEU over whitespace-split tokens: orders 1-4, uniform weights,
/// exponential smoothing, brevity penalty from the closest-length reference
/// (one reference per segment here). Callers tokenize; nothing is lowercased
/// or normalized. Throws Error(EmptyCorpus) for empty input.
double text_bleu4(const std::vector<std::vector<std::string>>& hyps,
                  const std::vector<std::vector<std::string>>& refs);

/// Pearson correlation of average-ranked values (ties get their mean rank).
/// Throws Error(DegenerateInput) for fewer than two points or a constant
/// side.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

/// Tau-b: (C - D) / sqrt((n0 - n1)(n0 - n2)), with tie corrections from the
/// tie groups of each side. Discordant pairs are counted by merge-sort
/// inversion counting, so large run tables stay O(n log n).
double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);

struct MetricSpec {
  std::string name;
  ScoreConfig config;
};

/// Table 3 style grid: all-channel SB-t{1..max_t}c{1..max_c} plus
/// manual-only SB-t{1..max_t}c{1..min(max_c,2)} (two manual channels cannot
/// form larger channel grams).
std::vector<MetricSpec> default_metric_grid(const ChannelMapping& mapping,
                                            int max_temporal, int max_channel);

struct SimulationConfig {
  std::uint64_t runs = 200;
  std::size_t sample_size = 50;  // must be even; half hypotheses, half references
  std::uint64_t seed = 0;
  std::vector<MetricSpec> metric_grid;
};

struct ScoreTable {
  std::vector<std::string> metric_names;  // text_bleu last
  std::vector<std::vector<double>> rows;  // one row per run
};

/// One paired sign/text document of a simulation corpus.
struct PairedDocument {
  TimeAlignedDocument sign;
  std::vector<std::string> text_tokens;
};

/// Simulates translation systems: per run, draws sample_size documents
/// without replacement, uses the first half as hypotheses paired element-wise
/// with the second half as references, and scores the pairing with every
/// metric in the grid plus text-side BLEU. Runs use independent SplitMix64
/// streams seeded with seed XOR run_index, so tables are reproducible and
/// runs order-independent.
ScoreTable simulate_systems(const std::vector<PairedDocument>& corpus,
                            const ChannelMapping& mapping,
                            const SimulationConfig& cfg);

struct MetricCorrelation {
  std::string metric;
  double spearman = 0.0;
  double kendall = 0.0;
  std::size_t runs = 0;
  bool degenerate = false;
};

struct CorrelationReport {
  std::vector<MetricCorrelation> metrics;  // sorted by descending rho
};

/// Rank correlation of each metric column against the text_bleu column.
/// Degenerate columns (constant) are reported, not fatal.
CorrelationReport correlation_report(const ScoreTable& table);

std::string score_table_tsv(const ScoreTable& table);
ScoreTable score_table_from_tsv(const std::string& tsv);
std::string correlation_report_tsv(const CorrelationReport& report);

/// Merges externally computed per-run score columns (TSV with a leading
/// "run" column) into the table, for comparing metrics this library does not
/// implement.
void merge_extra_columns(ScoreTable& table, const std::string& tsv);

struct SyntheticCorpusConfig {
  std::size_t documents = 400;
  std::uint64_t seed = 17;
  std::size_t vocabulary = 60;
  std::size_t min_length = 4;
  std::size_t max_length = 12;
  double drop_probability = 0.08;
  double substitute_probability = 0.08;
  double swap_probability = 0.08;
  double nonmanual_probability = 0.35;
};

/// Deterministic paired corpus where each document's gloss track mirrors its
/// text tokens with controlled noise, so sign-side and text-side similarity
/// of random pairings correlate.
std::vector<PairedDocument> synthetic_corpus(const SyntheticCorpusConfig& cfg);

/// Mapping matching synthetic_corpus documents (right/left/head/mouth).
ChannelMapping synthetic_mapping();

}  // namespace signbleu

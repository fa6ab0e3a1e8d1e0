#include "signbleu/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace signbleu {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "empty draw range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return v % n;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k,
                                                    Rng& rng) {
  if (k > n) {
    throw Error(ErrorCode::CorpusTooSmall, "sample size exceeds population");
  }
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

double text_bleu4(const std::vector<std::vector<std::string>>& hyps,
                  const std::vector<std::vector<std::string>>& refs) {
  if (hyps.empty()) throw Error(ErrorCode::EmptyCorpus, "no hypothesis segments");
  if (hyps.size() != refs.size()) {
    throw Error(ErrorCode::InvalidConfig,
                "hypothesis and reference lists differ in length");
  }
  constexpr int kMaxOrder = 4;
  long long numerator[kMaxOrder] = {0, 0, 0, 0};
  long long denominator[kMaxOrder] = {0, 0, 0, 0};
  long long hyp_len = 0;
  long long ref_len = 0;

  auto count_grams = [](const std::vector<std::string>& tokens, int n) {
    std::map<std::vector<std::string>, long long> counts;
    if (tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)]++;
    }
    return counts;
  };

  for (std::size_t s = 0; s < hyps.size(); ++s) {
    hyp_len += static_cast<long long>(hyps[s].size());
    ref_len += static_cast<long long>(refs[s].size());
    for (int n = 1; n <= kMaxOrder; ++n) {
      const auto hyp_counts = count_grams(hyps[s], n);
      const auto ref_counts = count_grams(refs[s], n);
      for (const auto& [gram, count] : hyp_counts) {
        denominator[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          numerator[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  double bp = 1.0;
  if (hyp_len == 0) return 0.0;
  if (hyp_len <= ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  }

  double log_sum = 0.0;
  double smooth = 1.0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (denominator[n] == 0) return 0.0;
    double p = static_cast<double>(numerator[n]) / static_cast<double>(denominator[n]);
    if (numerator[n] == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(denominator[n]));
    }
    log_sum += std::log(p) / kMaxOrder;
  }
  return bp * std::exp(log_sum);
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

void check_correlation_input(const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::InvalidConfig, "vectors differ in length");
  }
  if (x.size() < 2) {
    throw Error(ErrorCode::DegenerateInput, "need at least two points");
  }
  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](double value) { return value == v.front(); });
  };
  if (constant(x) || constant(y)) {
    throw Error(ErrorCode::DegenerateInput, "constant input has no rank order");
  }
}

/// Pairs (i, j) with x_i < x_j and y_i > y_j, counted by merge sort over y
/// after sorting by (x, y). Pairs tied in x contribute no inversion because
/// they arrive y-sorted.
long long discordant_pairs(std::vector<double> y_sorted_by_x) {
  std::vector<double> buffer(y_sorted_by_x.size());
  long long inversions = 0;
  for (std::size_t width = 1; width < y_sorted_by_x.size(); width *= 2) {
    for (std::size_t lo = 0; lo + width < y_sorted_by_x.size(); lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, y_sorted_by_x.size());
      std::size_t a = lo;
      std::size_t b = mid;
      std::size_t out = lo;
      while (a < mid && b < hi) {
        if (y_sorted_by_x[b] < y_sorted_by_x[a]) {
          inversions += static_cast<long long>(mid - a);
          buffer[out++] = y_sorted_by_x[b++];
        } else {
          buffer[out++] = y_sorted_by_x[a++];
        }
      }
      while (a < mid) buffer[out++] = y_sorted_by_x[a++];
      while (b < hi) buffer[out++] = y_sorted_by_x[b++];
      std::copy(buffer.begin() + lo, buffer.begin() + hi,
                y_sorted_by_x.begin() + lo);
    }
  }
  return inversions;
}

long long tie_pair_sum(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  long long sum = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const long long t = static_cast<long long>(j - i + 1);
    sum += t * (t - 1) / 2;
    i = j + 1;
  }
  return sum;
}

}  // namespace

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  check_correlation_input(x, y);
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const std::size_t n = rx.size();
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += rx[i];
    mean_y += ry[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean_x;
    const double dy = ry[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  return cov / std::sqrt(var_x * var_y);
}

double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  check_correlation_input(x, y);
  const std::size_t n = x.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(x[a], y[a]) < std::tie(x[b], y[b]);
  });
  std::vector<double> y_by_x(n);
  for (std::size_t i = 0; i < n; ++i) y_by_x[i] = y[order[i]];

  const long long n0 = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  const long long n1 = tie_pair_sum(x);
  const long long n2 = tie_pair_sum(y);

  // Pairs tied in both x and y.
  std::vector<std::pair<double, double>> xy(n);
  for (std::size_t i = 0; i < n; ++i) xy[i] = {x[i], y[i]};
  std::sort(xy.begin(), xy.end());
  long long n3 = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xy[j + 1] == xy[i]) ++j;
    const long long t = static_cast<long long>(j - i + 1);
    n3 += t * (t - 1) / 2;
    i = j + 1;
  }

  const long long discordant = discordant_pairs(std::move(y_by_x));
  const long long concordant = n0 - n1 - n2 + n3 - discordant;
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) *
                       std::sqrt(static_cast<double>(n0 - n2));
  return (static_cast<double>(concordant) - static_cast<double>(discordant)) / denom;
}

std::vector<MetricSpec> default_metric_grid(const ChannelMapping& mapping,
                                            int max_temporal, int max_channel) {
  std::vector<MetricSpec> grid;
  for (int t = 1; t <= max_temporal; ++t) {
    for (int c = 1; c <= max_channel; ++c) {
      ScoreConfig cfg;
      cfg.max_temporal = t;
      cfg.max_channel = c;
      std::ostringstream name;
      name << "SB-t" << t << "c" << c;
      grid.push_back({name.str(), cfg});
    }
  }
  const int manual_max_channel =
      std::min(max_channel, static_cast<int>(mapping.manual_channels.size()));
  for (int t = 1; t <= max_temporal; ++t) {
    for (int c = 1; c <= manual_max_channel; ++c) {
      ScoreConfig cfg;
      cfg.max_temporal = t;
      cfg.max_channel = c;
      cfg.scope = ChannelScope::Manual;
      cfg.manual_channels = mapping.manual_channels;
      std::ostringstream name;
      name << "SB-t" << t << "c" << c << "-manual";
      grid.push_back({name.str(), cfg});
    }
  }
  return grid;
}

namespace {

struct PreparedDocument {
  BlockMatrix all;
  BlockMatrix manual;
  long long all_count = 0;
  long long manual_count = 0;
  // Multisets indexed by order for each kind and scope.
  std::vector<GramMultiset> all_temporal;     // [0] = t1
  std::vector<GramMultiset> all_channel;      // [0] = c2
  std::vector<GramMultiset> manual_temporal;
  std::vector<GramMultiset> manual_channel;
};

struct OrderNeed {
  int max_t_all = 0;
  int max_c_all = 0;
  int max_t_manual = 0;
  int max_c_manual = 0;
};

// Per-run clipped count sums for every order a scope needs, shared by all
// metrics of that scope.
struct ScopeSums {
  std::vector<ClippedCount> temporal;  // [0] = t1
  std::vector<ClippedCount> channel;   // [0] = c2
  long long hyp_len = 0;
  long long ref_len = 0;
};

ScopeSums scope_sums(const std::vector<PreparedDocument>& docs,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                     bool manual, int max_t, int max_c) {
  ScopeSums sums;
  sums.temporal.resize(static_cast<std::size_t>(std::max(0, max_t)));
  sums.channel.resize(static_cast<std::size_t>(std::max(0, max_c - 1)));
  for (const auto& [h, r] : pairs) {
    const PreparedDocument& hyp = docs[h];
    const PreparedDocument& ref = docs[r];
    sums.hyp_len += manual ? hyp.manual_count : hyp.all_count;
    sums.ref_len += manual ? ref.manual_count : ref.all_count;
    const auto& hyp_t = manual ? hyp.manual_temporal : hyp.all_temporal;
    const auto& ref_t = manual ? ref.manual_temporal : ref.all_temporal;
    const auto& hyp_c = manual ? hyp.manual_channel : hyp.all_channel;
    const auto& ref_c = manual ? ref.manual_channel : ref.all_channel;
    for (std::size_t i = 0; i < sums.temporal.size(); ++i) {
      const ClippedCount clip = clipped_matches(hyp_t[i], {ref_t[i]});
      sums.temporal[i].numerator += clip.numerator;
      sums.temporal[i].denominator += clip.denominator;
    }
    for (std::size_t i = 0; i < sums.channel.size(); ++i) {
      const ClippedCount clip = clipped_matches(hyp_c[i], {ref_c[i]});
      sums.channel[i].numerator += clip.numerator;
      sums.channel[i].denominator += clip.denominator;
    }
  }
  return sums;
}

// Same combination rule as corpus_sign_bleu, applied to precomputed sums.
double combine_sums(const ScopeSums& sums, const ScoreConfig& cfg) {
  if (sums.hyp_len == 0) return 0.0;
  double bp = 1.0;
  if (sums.hyp_len <= sums.ref_len) {
    bp = std::exp(1.0 - static_cast<double>(sums.ref_len) /
                            static_cast<double>(sums.hyp_len));
  }
  const std::vector<OrderKey> keys = cfg.order_sequence();
  double smooth = 1.0;
  const double weight = 1.0 / static_cast<double>(keys.size());
  double log_sum = 0.0;
  for (const OrderKey& key : keys) {
    const ClippedCount& c =
        key.kind == GramKind::Temporal
            ? sums.temporal[static_cast<std::size_t>(key.order - 1)]
            : sums.channel[static_cast<std::size_t>(key.order - 2)];
    if (c.denominator == 0) return 0.0;
    double p = static_cast<double>(c.numerator) /
               static_cast<double>(c.denominator);
    if (c.numerator == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * static_cast<double>(c.denominator));
    }
    log_sum += weight * std::log(p);
  }
  return bp * std::exp(log_sum);
}

}  // namespace

ScoreTable simulate_systems(const std::vector<PairedDocument>& corpus,
                            const ChannelMapping& mapping,
                            const SimulationConfig& cfg) {
  if (cfg.runs < 1) throw Error(ErrorCode::InvalidConfig, "runs must be >= 1");
  if (cfg.sample_size < 2 || cfg.sample_size % 2 != 0) {
    throw Error(ErrorCode::InvalidConfig, "sample size must be even and >= 2");
  }
  if (corpus.size() < cfg.sample_size) {
    throw Error(ErrorCode::CorpusTooSmall,
                "corpus smaller than the per-run sample size");
  }
  std::vector<MetricSpec> grid = cfg.metric_grid;
  if (grid.empty()) grid = default_metric_grid(mapping, 4, 4);

  OrderNeed need;
  for (const auto& spec : grid) {
    if (spec.config.scope == ChannelScope::Manual) {
      need.max_t_manual = std::max(need.max_t_manual, spec.config.max_temporal);
      need.max_c_manual = std::max(need.max_c_manual, spec.config.max_channel);
    } else {
      need.max_t_all = std::max(need.max_t_all, spec.config.max_temporal);
      need.max_c_all = std::max(need.max_c_all, spec.config.max_channel);
    }
  }

  std::vector<PreparedDocument> docs;
  docs.reserve(corpus.size());
  for (const auto& paired : corpus) {
    PreparedDocument d;
    d.all = blockify(paired.sign, mapping);
    std::vector<std::string> manual_rows;
    for (const auto& channel : mapping.manual_channels) {
      if (d.all.channel_index(channel) >= 0) manual_rows.push_back(channel);
    }
    d.manual = restrict_channels(d.all, manual_rows);
    d.all_count = annotation_count(d.all);
    d.manual_count = annotation_count(d.manual);
    for (int n = 1; n <= need.max_t_all; ++n) {
      d.all_temporal.push_back(temporal_grams(d.all, n));
    }
    for (int n = 2; n <= need.max_c_all; ++n) {
      d.all_channel.push_back(channel_grams(d.all, n));
    }
    for (int n = 1; n <= need.max_t_manual; ++n) {
      d.manual_temporal.push_back(temporal_grams(d.manual, n));
    }
    for (int n = 2; n <= need.max_c_manual; ++n) {
      d.manual_channel.push_back(channel_grams(d.manual, n));
    }
    docs.push_back(std::move(d));
  }

  ScoreTable table;
  for (const auto& spec : grid) table.metric_names.push_back(spec.name);
  table.metric_names.push_back("text_bleu");
  table.rows.resize(cfg.runs);

  const bool any_all = need.max_t_all > 0 || need.max_c_all > 0;
  const bool any_manual = need.max_t_manual > 0 || need.max_c_manual > 0;
  const std::size_t half = cfg.sample_size / 2;
  for (std::uint64_t run = 0; run < cfg.runs; ++run) {
    Rng rng(cfg.seed ^ run);
    const std::vector<std::size_t> sample =
        sample_without_replacement(corpus.size(), cfg.sample_size, rng);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(half);
    for (std::size_t i = 0; i < half; ++i) {
      pairs.push_back({sample[i], sample[i + half]});
    }

    ScopeSums all_sums;
    ScopeSums manual_sums;
    if (any_all) {
      all_sums = scope_sums(docs, pairs, false, need.max_t_all, need.max_c_all);
    }
    if (any_manual) {
      manual_sums =
          scope_sums(docs, pairs, true, need.max_t_manual, need.max_c_manual);
    }

    std::vector<double>& row = table.rows[run];
    row.reserve(grid.size() + 1);
    for (const auto& spec : grid) {
      const bool manual = spec.config.scope == ChannelScope::Manual;
      row.push_back(combine_sums(manual ? manual_sums : all_sums, spec.config));
    }
    std::vector<std::vector<std::string>> hyp_tokens;
    std::vector<std::vector<std::string>> ref_tokens;
    hyp_tokens.reserve(half);
    ref_tokens.reserve(half);
    for (const auto& [h, r] : pairs) {
      hyp_tokens.push_back(corpus[h].text_tokens);
      ref_tokens.push_back(corpus[r].text_tokens);
    }
    row.push_back(text_bleu4(hyp_tokens, ref_tokens));
  }
  return table;
}

CorrelationReport correlation_report(const ScoreTable& table) {
  if (table.rows.size() < 2) {
    throw Error(ErrorCode::DegenerateInput, "need at least two runs");
  }
  const auto bleu_it = std::find(table.metric_names.begin(),
                                 table.metric_names.end(), "text_bleu");
  if (bleu_it == table.metric_names.end()) {
    throw Error(ErrorCode::InvalidConfig, "table has no text_bleu column");
  }
  const std::size_t bleu_col =
      static_cast<std::size_t>(bleu_it - table.metric_names.begin());

  std::vector<double> bleu;
  bleu.reserve(table.rows.size());
  for (const auto& row : table.rows) bleu.push_back(row[bleu_col]);

  CorrelationReport report;
  for (std::size_t col = 0; col < table.metric_names.size(); ++col) {
    if (col == bleu_col) continue;
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const auto& row : table.rows) values.push_back(row[col]);
    MetricCorrelation entry;
    entry.metric = table.metric_names[col];
    entry.runs = table.rows.size();
    try {
      entry.spearman = spearman_rho(values, bleu);
      entry.kendall = kendall_tau_b(values, bleu);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateInput) throw;
      entry.degenerate = true;
    }
    report.metrics.push_back(std::move(entry));
  }
  std::stable_sort(report.metrics.begin(), report.metrics.end(),
                   [](const MetricCorrelation& a, const MetricCorrelation& b) {
                     if (a.degenerate != b.degenerate) return !a.degenerate;
                     return a.spearman > b.spearman;
                   });
  return report;
}

namespace {

std::string format_score(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

}  // namespace

std::string score_table_tsv(const ScoreTable& table) {
  std::ostringstream os;
  os << "run";
  for (const auto& name : table.metric_names) os << "\t" << name;
  os << "\n";
  for (std::size_t run = 0; run < table.rows.size(); ++run) {
    os << run;
    for (double value : table.rows[run]) os << "\t" << format_score(value);
    os << "\n";
  }
  return os.str();
}

ScoreTable score_table_from_tsv(const std::string& tsv) {
  std::istringstream is(tsv);
  std::string line;
  if (!std::getline(is, line)) {
    throw Error(ErrorCode::SchemaError, "empty score table", "tsv");
  }
  auto split = [](const std::string& text) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream fs(text);
    while (std::getline(fs, field, '\t')) out.push_back(field);
    return out;
  };
  const std::vector<std::string> header = split(line);
  if (header.empty() || header.front() != "run") {
    throw Error(ErrorCode::SchemaError, "score table must start with a run column",
                "tsv");
  }
  ScoreTable table;
  table.metric_names.assign(header.begin() + 1, header.end());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::SchemaError, "row width does not match header", line);
    }
    std::vector<double> row;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      row.push_back(std::stod(fields[i]));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string correlation_report_tsv(const CorrelationReport& report) {
  std::ostringstream os;
  os << "metric\tspearman_rho\tkendall_tau_b\truns\tnote\n";
  for (const auto& m : report.metrics) {
    os << m.metric << "\t";
    if (m.degenerate) {
      os << "na\tna\t" << m.runs << "\tdegenerate\n";
    } else {
      os << format_score(m.spearman) << "\t" << format_score(m.kendall) << "\t"
         << m.runs << "\t\n";
    }
  }
  return os.str();
}

void merge_extra_columns(ScoreTable& table, const std::string& tsv) {
  const ScoreTable extra = score_table_from_tsv(tsv);
  if (extra.rows.size() != table.rows.size()) {
    throw Error(ErrorCode::SchemaError,
                "extra column table has a different run count", "tsv");
  }
  for (const auto& name : extra.metric_names) {
    table.metric_names.insert(table.metric_names.end() - 1, name);
  }
  for (std::size_t run = 0; run < table.rows.size(); ++run) {
    std::vector<double>& row = table.rows[run];
    row.insert(row.end() - 1, extra.rows[run].begin(), extra.rows[run].end());
  }
}

std::vector<PairedDocument> synthetic_corpus(const SyntheticCorpusConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<PairedDocument> corpus;
  corpus.reserve(cfg.documents);

  auto word = [](std::size_t index) {
    std::ostringstream os;
    os << "w" << index;
    return os.str();
  };
  auto gloss = [](std::size_t index) {
    std::ostringstream os;
    os << "g" << index;
    return os.str();
  };

  for (std::size_t d = 0; d < cfg.documents; ++d) {
    const std::size_t length =
        cfg.min_length + rng.below(cfg.max_length - cfg.min_length + 1);
    std::vector<std::size_t> words;
    for (std::size_t i = 0; i < length; ++i) words.push_back(rng.below(cfg.vocabulary));

    PairedDocument doc;
    doc.sign.id = "doc" + std::to_string(d);
    for (std::size_t w : words) doc.text_tokens.push_back(word(w));

    // Gloss track mirrors the words, with drop/substitute/swap noise.
    std::vector<std::size_t> glosses;
    for (std::size_t w : words) {
      if (rng.next_double() < cfg.drop_probability) continue;
      if (rng.next_double() < cfg.substitute_probability) {
        glosses.push_back(rng.below(cfg.vocabulary));
      } else {
        glosses.push_back(w);
      }
    }
    for (std::size_t i = 0; i + 1 < glosses.size(); ++i) {
      if (rng.next_double() < cfg.swap_probability) {
        std::swap(glosses[i], glosses[i + 1]);
      }
    }
    if (glosses.empty()) glosses.push_back(words.front());

    std::int64_t t = 0;
    for (std::size_t g : glosses) {
      const bool two_handed = g % 2 == 0;
      const std::int64_t start = t;
      const std::int64_t end = t + 80 + static_cast<std::int64_t>(rng.below(4)) * 10;
      doc.sign.annotations.push_back(
          {two_handed ? "both" : "strong", start, end, gloss(g)});
      // Head and mouth activity keyed to the gloss keeps non-manual grams
      // informative rather than random.
      if (rng.next_double() < cfg.nonmanual_probability) {
        const std::string channel = g % 3 == 0 ? "head" : "mouth";
        doc.sign.annotations.push_back(
            {channel, start, end + 20, "nm" + std::to_string(g % 7)});
      }
      t = end + 20 + static_cast<std::int64_t>(rng.below(3)) * 10;
    }
    doc.sign.normalize();
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

ChannelMapping synthetic_mapping() {
  ChannelMapping m;
  m.entries = {{"both", {"right", "left"}},
               {"strong", {"right"}},
               {"head", {"head"}},
               {"mouth", {"mouth"}}};
  m.channel_order = {"right", "left", "head", "mouth"};
  m.manual_channels = {"right", "left"};
  m.dominant_channel = "right";
  m.non_dominant_channel = "left";
  return m;
}

}  // namespace signbleu

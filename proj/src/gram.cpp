#include "signbleu/gram.hpp"

#include <algorithm>
#include <sstream>

namespace signbleu {

const char* gram_kind_name(GramKind kind) {
  return kind == GramKind::Temporal ? "temporal" : "channel";
}

std::string to_string(const Gram& gram) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < gram.items.size(); ++i) {
    if (i) os << ", ";
    os << gram.items[i].channel << "." << gram.items[i].gloss;
    if (gram.items[i].span > 0) os << "/" << gram.items[i].span;
  }
  os << ")";
  return os.str();
}

long long GramMultiset::total() const {
  long long sum = 0;
  for (const auto& [gram, count] : counts) sum += count;
  return sum;
}

void GramMultiset::add(Gram gram, long long count) {
  counts[std::move(gram)] += count;
}

GramMultiset temporal_grams(const BlockMatrix& b, int n, TemporalIdentity identity) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidConfig, "temporal gram order must be >= 1");
  }
  GramMultiset out;
  out.kind = GramKind::Temporal;
  out.order = n;

  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    std::vector<GramItem> sequence;
    for (std::size_t j = 0; j < b.columns.size(); ++j) {
      const BlockCell& cell = b.columns[j][row];
      if (cell.is_null() || cell.cont_prev) continue;
      int span = 1;
      for (std::size_t k = j; k + 1 < b.columns.size() &&
                              b.columns[k][row].cont_next; ++k) {
        ++span;
      }
      GramItem item{b.channels[row], cell.gloss, 0};
      if (identity == TemporalIdentity::GlossSpan) item.span = span;
      sequence.push_back(std::move(item));
    }
    if (sequence.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t start = 0; start + n <= sequence.size(); ++start) {
      Gram gram;
      gram.kind = GramKind::Temporal;
      gram.items.assign(sequence.begin() + start, sequence.begin() + start + n);
      out.add(std::move(gram));
    }
  }
  return out;
}

GramMultiset channel_grams(const BlockMatrix& b, int n) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidConfig, "channel gram order must be >= 2");
  }
  GramMultiset out;
  out.kind = GramKind::Channel;
  out.order = n;

  for (const auto& column : b.columns) {
    std::vector<GramItem> cells;
    for (std::size_t row = 0; row < b.channels.size(); ++row) {
      if (!column[row].is_null()) {
        cells.push_back({b.channels[row], column[row].gloss, 0});
      }
    }
    const std::size_t k = cells.size();
    if (k < static_cast<std::size_t>(n)) continue;
    std::sort(cells.begin(), cells.end());

    // Enumerate n-subsets with a fixed-size index vector.
    std::vector<std::size_t> pick(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    while (true) {
      Gram gram;
      gram.kind = GramKind::Channel;
      for (std::size_t i : pick) gram.items.push_back(cells[i]);
      out.add(std::move(gram));

      std::size_t i = pick.size();
      while (i > 0) {
        --i;
        if (pick[i] != i + k - pick.size()) break;
        if (i == 0) {
          i = pick.size();
          break;
        }
      }
      if (i == pick.size()) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

std::vector<GramOrderStat> gram_statistics(const std::vector<BlockMatrix>& corpus,
                                           int max_temporal, int max_channel) {
  std::vector<GramOrderStat> out;
  if (max_temporal < 1) {
    throw Error(ErrorCode::InvalidConfig, "max temporal order must be >= 1");
  }
  const double denom = corpus.empty() ? 1.0 : static_cast<double>(corpus.size());
  for (int n = 1; n <= max_temporal; ++n) {
    long long sum = 0;
    for (const auto& b : corpus) sum += temporal_grams(b, n).total();
    out.push_back({GramKind::Temporal, n, static_cast<double>(sum) / denom});
  }
  for (int n = 2; n <= max_channel; ++n) {
    long long sum = 0;
    for (const auto& b : corpus) sum += channel_grams(b, n).total();
    out.push_back({GramKind::Channel, n, static_cast<double>(sum) / denom});
  }
  return out;
}

}  // namespace signbleu

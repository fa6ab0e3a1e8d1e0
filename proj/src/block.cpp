#include "signbleu/block.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace signbleu {

int BlockMatrix::channel_index(const std::string& channel) const {
  auto it = std::find(channels.begin(), channels.end(), channel);
  if (it == channels.end()) return -1;
  return static_cast<int>(it - channels.begin());
}

BlockMatrix blockify(const TimeAlignedDocument& doc, const ChannelMapping& mapping) {
  BlockMatrix b;
  b.id = doc.id;
  b.channels = mapping.channel_order;
  if (doc.annotations.empty()) return b;

  const std::vector<std::int64_t> times = boundary_times(doc);
  const std::size_t segments = times.size() - 1;
  const std::size_t rows = b.channels.size();

  std::vector<std::vector<BlockCell>> grid(
      segments, std::vector<BlockCell>(rows, BlockCell{}));

  for (const auto& a : doc.annotations) {
    const auto* channels = mapping.channels_for(a.tier);
    if (channels == nullptr) {
      throw Error(ErrorCode::UnmappedTier, "tier has no mapping entry", a.tier);
    }
    const auto first = std::lower_bound(times.begin(), times.end(), a.start_ms);
    const auto last = std::lower_bound(times.begin(), times.end(), a.end_ms);
    const std::size_t seg_begin = static_cast<std::size_t>(first - times.begin());
    const std::size_t seg_end = static_cast<std::size_t>(last - times.begin());
    for (const auto& channel : *channels) {
      const int row = mapping.channel_index(channel);
      if (row < 0) {
        throw Error(ErrorCode::UnknownChannel,
                    "mapped channel missing from channel order", channel);
      }
      for (std::size_t seg = seg_begin; seg < seg_end; ++seg) {
        BlockCell& cell = grid[seg][static_cast<std::size_t>(row)];
        if (!cell.is_null()) {
          std::ostringstream os;
          os << "channel " << channel << ", segment [" << times[seg] << ","
             << times[seg + 1] << "): " << cell.gloss << " vs " << a.gloss;
          throw Error(ErrorCode::ChannelCollision,
                      "two annotations claim one cell", os.str());
        }
        cell.gloss = a.gloss;
        cell.cont_prev = seg != seg_begin;
        cell.cont_next = seg + 1 != seg_end;
      }
    }
  }

  for (auto& column : grid) {
    const bool empty = std::all_of(column.begin(), column.end(),
                                   [](const BlockCell& c) { return c.is_null(); });
    if (!empty) b.columns.push_back(std::move(column));
  }
  return b;
}

long long annotation_count(const BlockMatrix& b) {
  return annotation_count(b, b.channels);
}

long long annotation_count(const BlockMatrix& b,
                           const std::vector<std::string>& channels) {
  long long count = 0;
  for (const auto& channel : channels) {
    const int row = b.channel_index(channel);
    if (row < 0) {
      throw Error(ErrorCode::UnknownChannel, "channel is not a matrix row",
                  channel);
    }
    for (const auto& column : b.columns) {
      const BlockCell& cell = column[static_cast<std::size_t>(row)];
      if (!cell.is_null() && !cell.cont_prev) ++count;
    }
  }
  return count;
}

BlockMatrix restrict_channels(const BlockMatrix& b,
                              const std::vector<std::string>& channels) {
  std::set<std::string> keep;
  for (const auto& channel : channels) {
    if (b.channel_index(channel) < 0) {
      throw Error(ErrorCode::UnknownChannel, "channel is not a matrix row",
                  channel);
    }
    keep.insert(channel);
  }

  BlockMatrix out;
  out.id = b.id;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < b.channels.size(); ++i) {
    if (keep.count(b.channels[i])) {
      out.channels.push_back(b.channels[i]);
      rows.push_back(i);
    }
  }
  // A kept gloss run occupies every column it spans, so none of its columns
  // can become all-null; continuation flags stay consistent as-is.
  for (const auto& column : b.columns) {
    std::vector<BlockCell> cells;
    cells.reserve(rows.size());
    bool empty = true;
    for (std::size_t row : rows) {
      cells.push_back(column[row]);
      empty = empty && column[row].is_null();
    }
    if (!empty) out.columns.push_back(std::move(cells));
  }
  return out;
}

std::vector<std::vector<std::string>> channel_sequences(const BlockMatrix& b) {
  std::vector<std::vector<std::string>> out(b.channels.size());
  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    for (const auto& column : b.columns) {
      const BlockCell& cell = column[row];
      if (!cell.is_null() && !cell.cont_prev) out[row].push_back(cell.gloss);
    }
  }
  return out;
}

std::string render_marked(const BlockMatrix& b) {
  std::ostringstream os;
  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    os << b.channels[row] << ":";
    for (const auto& column : b.columns) {
      const BlockCell& cell = column[row];
      os << " ";
      if (cell.is_null()) {
        os << "-";
      } else {
        if (cell.cont_prev) os << ":";
        os << cell.gloss;
        if (cell.cont_next) os << ":";
      }
      os << " |";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace signbleu
